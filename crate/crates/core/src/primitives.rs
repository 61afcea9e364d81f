//! Primitive modules: iterated extensions of modules with s = 0 or s = 1,
//! exactly the modules killed by the covering construction.

use serde::{Deserialize, Serialize};

use crate::arith::{QMatrix, Subspace};
use crate::seifert::{hom_space, SeifertModule};

/// W0 = {x : s e_i x = 0 for all i} and W1 = {x : (1 - s) e_i x = 0 for all i}.
pub fn trivial_socle(v: &SeifertModule) -> (Subspace, Subspace) {
    let n = v.dim();
    let one_minus_s = &QMatrix::identity(n) - &v.s;
    let stacked = |m: &QMatrix| {
        let mut out = QMatrix::zeros(0, n);
        for e in &v.proj {
            out = out.vstack(&(m * e));
        }
        Subspace::kernel_of(&out)
    };
    let (w0, w1) = if v.proj.is_empty() { (Subspace::full(n), Subspace::full(n)) } else { (stacked(&v.s), stacked(&one_minus_s)) };
    debug_assert!(v.is_submodule(&w0) && v.is_submodule(&w1));
    (w0, w1)
}

/// One step of the ascending filtration: dimensions of the s = 0 and s = 1
/// parts of the trivial socle of V/U.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub s_zero: usize,
    pub s_one: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveAnalysis {
    pub max_primitive: Subspace,
    pub min_coprimitive: Subspace,
    pub layers: Vec<Layer>,
}

impl PrimitiveAnalysis {
    pub fn is_primitive(&self) -> bool {
        self.max_primitive.is_full()
    }
}

fn ascend(v: &SeifertModule) -> (Subspace, Vec<Layer>) {
    let mut u = Subspace::zero(v.dim());
    let mut layers = Vec::new();
    loop {
        let q = v.quotient(&u).expect("U is a submodule");
        let (w0, w1) = trivial_socle(&q.module);
        if w0.is_zero() && w1.is_zero() {
            return (u, layers);
        }
        layers.push(Layer { s_zero: w0.dim(), s_one: w1.dim() });
        u = v.preimage(&u, &q, &w0.sum(&w1));
    }
}

/// Largest primitive submodule, with the layers that exhibit it.
pub fn max_primitive_submodule(v: &SeifertModule) -> (Subspace, Vec<Layer>) {
    ascend(v)
}

/// Smallest W with V/W primitive: the annihilator of the largest primitive
/// submodule of the dual.
pub fn min_coprimitive(v: &SeifertModule) -> Subspace {
    let (u, _) = ascend(&v.dual());
    let w = u.annihilator();
    debug_assert!(v.is_submodule(&w));
    w
}

pub fn analyse(v: &SeifertModule) -> PrimitiveAnalysis {
    let (max_primitive, layers) = ascend(v);
    PrimitiveAnalysis { max_primitive, min_coprimitive: min_coprimitive(v), layers }
}

pub fn is_primitive(v: &SeifertModule) -> bool {
    ascend(v).0.is_full()
}

/// Basis of Hom(W, V'/U') with W the minimal coprimitive of V and U' the
/// maximal primitive of V'.
pub fn hom_in_quotient(v: &SeifertModule, target: &SeifertModule) -> Vec<QMatrix> {
    let w = v.submodule(min_coprimitive(v)).expect("coprimitive is a submodule");
    let (u, _) = ascend(target);
    let q = target.quotient(&u).expect("U is a submodule");
    if w.module.dim() == 0 || q.module.dim() == 0 {
        return Vec::new();
    }
    hom_space(&w.module, &q.module)
}
