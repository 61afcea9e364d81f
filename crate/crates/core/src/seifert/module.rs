use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::subspace::EchelonBuilder;
use crate::arith::{rat, QMatrix, Rat, Subspace};
use crate::error::SeifertError;

/// Coefficient ring tag of the input. Computation is always over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Ring {
    Z,
    #[default]
    Q,
}

/// Finite-dimensional representation of P_mu: an endomorphism `s` plus mu
/// orthogonal idempotents summing to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertModule {
    pub mu: usize,
    pub s: QMatrix,
    pub proj: Vec<QMatrix>,
    pub ring: Ring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dimension(String),
    Idempotence(usize),
    Orthogonality(usize, usize),
    PartitionOfUnity,
    Integrality,
    Symmetry,
    ProjectionCompatibility(usize),
    SCompatibility,
    Nonsingular,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::Dimension(_) => "dimension",
            Violation::Idempotence(_) => "idempotence",
            Violation::Orthogonality(..) => "orthogonality",
            Violation::PartitionOfUnity => "partition of unity",
            Violation::Integrality => "integrality",
            Violation::Symmetry => "symmetry",
            Violation::ProjectionCompatibility(_) => "projection compatibility",
            Violation::SCompatibility => "s compatibility",
            Violation::Nonsingular => "nonsingular",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension(m) => write!(f, "dimension: {m}"),
            Violation::Idempotence(i) => write!(f, "idempotence: e{} squared differs from e{}", i + 1, i + 1),
            Violation::Orthogonality(i, j) => write!(f, "orthogonality: e{} e{} is not zero", i + 1, j + 1),
            Violation::ProjectionCompatibility(i) => {
                write!(f, "projection compatibility: phi e{} differs from e{}^T phi", i + 1, i + 1)
            }
            v => f.write_str(v.name()),
        }
    }
}

impl SeifertModule {
    pub fn new(mu: usize, s: QMatrix, proj: Vec<QMatrix>) -> Self {
        SeifertModule { mu, s, proj, ring: Ring::Q }
    }

    /// Module whose projections are coordinate blocks of the given sizes.
    pub fn with_blocks(s: QMatrix, sizes: &[usize]) -> Self {
        let n = s.rows();
        let mut proj = Vec::new();
        let mut start = 0;
        for &k in sizes {
            let mut e = QMatrix::zeros(n, n);
            for i in start..(start + k).min(n) {
                e[(i, i)] = Rat::one();
            }
            proj.push(e);
            start += k;
        }
        SeifertModule::new(sizes.len(), s, proj)
    }

    pub fn zero(mu: usize) -> Self {
        SeifertModule::new(mu, QMatrix::zeros(0, 0), vec![QMatrix::zeros(0, 0); mu])
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    /// s followed by the projections.
    pub fn generators(&self) -> Vec<&QMatrix> {
        std::iter::once(&self.s).chain(self.proj.iter()).collect()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.s.rows();
        if !self.s.is_square() {
            return Err(Violation::Dimension("s is not square".into()));
        }
        if self.mu == 0 || self.proj.len() != self.mu {
            return Err(Violation::Dimension(format!(
                "expected {} projections, found {}",
                self.mu,
                self.proj.len()
            )));
        }
        if self.proj.iter().any(|e| e.rows() != n || e.cols() != n) {
            return Err(Violation::Dimension("projection size differs from s".into()));
        }
        if self.ring == Ring::Z && self.generators().iter().any(|m| m.data().iter().any(|x| !x.is_integer())) {
            return Err(Violation::Integrality);
        }
        for (i, e) in self.proj.iter().enumerate() {
            if &(e * e) != e {
                return Err(Violation::Idempotence(i));
            }
        }
        for i in 0..self.mu {
            for j in 0..self.mu {
                if i != j && !(&self.proj[i] * &self.proj[j]).is_zero() {
                    return Err(Violation::Orthogonality(i, j));
                }
            }
        }
        let mut sum = QMatrix::zeros(n, n);
        for e in &self.proj {
            sum = &sum + e;
        }
        if !sum.is_identity() {
            return Err(Violation::PartitionOfUnity);
        }
        Ok(())
    }

    /// s* = I - s^T, e_i* = e_i^T.
    pub fn dual(&self) -> SeifertModule {
        let n = self.dim();
        SeifertModule {
            mu: self.mu,
            s: &QMatrix::identity(n) - &self.s.transpose(),
            proj: self.proj.iter().map(|e| e.transpose()).collect(),
            ring: self.ring,
        }
    }

    pub fn direct_sum(&self, o: &SeifertModule) -> Result<SeifertModule, SeifertError> {
        if self.mu != o.mu {
            return Err(SeifertError::MuMismatch(self.mu, o.mu));
        }
        Ok(SeifertModule {
            mu: self.mu,
            s: QMatrix::block_diag(&[&self.s, &o.s]),
            proj: self.proj.iter().zip(&o.proj).map(|(a, b)| QMatrix::block_diag(&[a, b])).collect(),
            ring: if self.ring == Ring::Z && o.ring == Ring::Z { Ring::Z } else { Ring::Q },
        })
    }

    pub fn is_submodule(&self, w: &Subspace) -> bool {
        self.generators().iter().all(|g| w.is_invariant(g))
    }

    /// Smallest submodule containing the vectors.
    pub fn spin(&self, vectors: &[Vec<Rat>]) -> Subspace {
        let n = self.dim();
        let gens = self.generators();
        let mut ech = EchelonBuilder::new();
        let mut queue: Vec<Vec<Rat>> = Vec::new();
        let mut found = Vec::new();
        for v in vectors {
            if ech.add(v) {
                queue.push(v.clone());
                found.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            if ech.len() == n {
                break;
            }
            for g in &gens {
                let w = g.mul_vec(&v);
                if ech.add(&w) {
                    queue.push(w.clone());
                    found.push(w);
                }
            }
        }
        Subspace::span(n, &found)
    }

    pub fn spin_submodule(&self, vectors: &[Vec<Rat>]) -> Submodule {
        let space = self.spin(vectors);
        self.submodule(space).expect("spin output is invariant")
    }

    /// Induced structure on an invariant subspace.
    pub fn submodule(&self, space: Subspace) -> Result<Submodule, SeifertError> {
        if !self.is_submodule(&space) {
            return Err(SeifertError::NotInvariant);
        }
        let module = self.restrict(&space);
        let inclusion = space.basis_matrix();
        Ok(Submodule { space, module, inclusion })
    }

    fn restrict(&self, w: &Subspace) -> SeifertModule {
        SeifertModule {
            mu: self.mu,
            s: w.restrict(&self.s),
            proj: self.proj.iter().map(|e| w.restrict(e)).collect(),
            ring: self.ring,
        }
    }

    pub fn quotient(&self, w: &Subspace) -> Result<Quotient, SeifertError> {
        if !self.is_submodule(w) {
            return Err(SeifertError::NotInvariant);
        }
        let n = self.dim();
        let comp = w.complement_indices();
        let k = comp.len();
        let induced = |m: &QMatrix| {
            let cols: Vec<Vec<Rat>> = comp.iter().map(|&c| w.quotient_coords(&m.col(c))).collect();
            QMatrix::from_columns(k, &cols)
        };
        let module = SeifertModule {
            mu: self.mu,
            s: induced(&self.s),
            proj: self.proj.iter().map(induced).collect(),
            ring: self.ring,
        };
        let proj_cols: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut e = vec![Rat::zero(); n];
                e[i] = Rat::one();
                w.quotient_coords(&e)
            })
            .collect();
        let projection = QMatrix::from_columns(k, &proj_cols);
        let mut section = QMatrix::zeros(n, k);
        for (j, &c) in comp.iter().enumerate() {
            section[(c, j)] = Rat::one();
        }
        Ok(Quotient { module, projection, section })
    }

    /// Preimage of a subspace of the quotient by `w`.
    pub fn preimage(&self, w: &Subspace, q: &Quotient, sub: &Subspace) -> Subspace {
        let mut vecs = w.basis_vectors();
        for v in sub.basis_vectors() {
            vecs.push(q.section.mul_vec(&v));
        }
        Subspace::span(self.dim(), &vecs)
    }

    /// The same module read with coefficients in Q.
    pub fn promote(&self) -> SeifertModule {
        SeifertModule { ring: Ring::Q, ..self.clone() }
    }

    /// Conjugate by an invertible matrix: x -> p x.
    pub fn conjugate(&self, p: &QMatrix) -> SeifertModule {
        let pi = p.inverse().expect("conjugating matrix must be invertible");
        SeifertModule {
            mu: self.mu,
            s: &(p * &self.s) * &pi,
            proj: self.proj.iter().map(|e| &(p * e) * &pi).collect(),
            ring: self.ring,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Submodule {
    pub space: Subspace,
    pub module: SeifertModule,
    /// Ambient n x k basis matrix; a morphism module -> ambient.
    pub inclusion: QMatrix,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: SeifertModule,
    /// (n-k) x n matrix of the quotient map.
    pub projection: QMatrix,
    /// n x (n-k) standard section by non-pivot columns.
    pub section: QMatrix,
}

/// A module map, target.dim x source.dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMorphism {
    pub source: SeifertModule,
    pub target: SeifertModule,
    pub matrix: QMatrix,
}

impl SeifertMorphism {
    pub fn is_valid(&self) -> bool {
        is_morphism(&self.matrix, &self.source, &self.target)
    }
}

pub fn is_morphism(x: &QMatrix, v: &SeifertModule, w: &SeifertModule) -> bool {
    x.rows() == w.dim()
        && x.cols() == v.dim()
        && (x * &v.s) == (&w.s * x)
        && v.proj.iter().zip(&w.proj).all(|(a, b)| (x * a) == (b * x))
}

/// Basis of Hom(V, W), as w.dim x v.dim matrices.
pub fn hom_space(v: &SeifertModule, w: &SeifertModule) -> Vec<QMatrix> {
    let (n, m) = (v.dim(), w.dim());
    if n == 0 || m == 0 {
        return vec![];
    }
    let pairs: Vec<(&QMatrix, &QMatrix)> =
        v.generators().into_iter().zip(w.generators()).collect();
    // Unknown X[a][b] at index a*n + b; equation X g - g' X = 0.
    let mut eqs = QMatrix::zeros(pairs.len() * m * n, m * n);
    let mut row = 0;
    for (g, h) in pairs {
        for a in 0..m {
            for b in 0..n {
                for c in 0..n {
                    let x = &g[(c, b)];
                    if !x.is_zero() {
                        eqs[(row, a * n + c)] += x;
                    }
                }
                for c in 0..m {
                    let x = &h[(a, c)];
                    if !x.is_zero() {
                        eqs[(row, c * n + b)] -= x;
                    }
                }
                row += 1;
            }
        }
    }
    eqs.kernel().into_iter().map(|k| QMatrix::from_vec(m, n, k)).collect()
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Found(QMatrix),
    /// `certified` is false only when the exhaustive determinant test was too
    /// large to run.
    NotIsomorphic { certified: bool },
}

impl IsoSearch {
    pub fn found(self) -> Option<QMatrix> {
        match self {
            IsoSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

const GRID_LIMIT: u64 = 50_000;

pub fn find_isomorphism<R: Rng>(v: &SeifertModule, w: &SeifertModule, rng: &mut R) -> IsoSearch {
    if v.mu != w.mu || v.dim() != w.dim() {
        return IsoSearch::NotIsomorphic { certified: true };
    }
    let n = v.dim();
    if n == 0 || (v.s == w.s && v.proj == w.proj) {
        return IsoSearch::Found(QMatrix::identity(n));
    }
    let basis = hom_space(v, w);
    if basis.is_empty() {
        return IsoSearch::NotIsomorphic { certified: true };
    }
    for b in &basis {
        if !b.det().is_zero() {
            return IsoSearch::Found(b.clone());
        }
    }
    let combo = |coef: &[Rat]| {
        let mut x = QMatrix::zeros(n, n);
        for (c, b) in coef.iter().zip(&basis) {
            if !c.is_zero() {
                x = &x + &b.scale(c);
            }
        }
        x
    };
    for _ in 0..200 {
        let coef: Vec<Rat> = basis
            .iter()
            .map(|_| Rat::new(rng.gen_range(-10i64..=10).into(), rng.gen_range(1i64..=10).into()))
            .collect();
        let x = combo(&coef);
        if !x.det().is_zero() {
            return IsoSearch::Found(x);
        }
    }
    // det(sum t_i B_i) has degree <= n in each t_i, so vanishing on the grid
    // {0..n}^k proves it is identically zero.
    let k = basis.len() as u32;
    let side = n as u64 + 1;
    if side.checked_pow(k).is_some_and(|t| t <= GRID_LIMIT) {
        let mut idx = vec![0u64; basis.len()];
        loop {
            let coef: Vec<Rat> = idx.iter().map(|&i| rat(i as i64)).collect();
            let x = combo(&coef);
            if !x.det().is_zero() {
                return IsoSearch::Found(x);
            }
            let mut p = 0;
            loop {
                if p == idx.len() {
                    return IsoSearch::NotIsomorphic { certified: true };
                }
                idx[p] += 1;
                if idx[p] < side {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }
    IsoSearch::NotIsomorphic { certified: false }
}
