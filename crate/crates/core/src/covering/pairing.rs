//! Exact series for sigma^-1, the truncated Blanchfield pairing of a Seifert
//! form and the search for a group-ring witness of its symmetry.

use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::series::{magnus_word, NCRationalSeries, TruncSeries, XWord};
use super::word::{FreeWord, GroupRingElem};
use crate::arith::sparse::{axpy, SparseRow};
use crate::arith::{QMatrix, Rat};
use crate::seifert::{SeifertForm, SeifertModule};

fn unit_row(n: usize, a: usize) -> QMatrix {
    let mut r = QMatrix::zeros(1, n);
    r[(0, a)] = Rat::one();
    r
}

fn unit_col(n: usize, b: usize) -> QMatrix {
    let mut c = QMatrix::zeros(n, 1);
    c[(b, 0)] = Rat::one();
    c
}

/// Entry (a, b): the coefficient of x_{i1}..x_{ik} is (-1)^k (s e_{i1} ... s e_{ik})_{ab}.
pub fn sigma_inverse_series(v: &SeifertModule) -> Vec<Vec<NCRationalSeries>> {
    let n = v.dim();
    // Row vectors are multiplied on the right, so T_i = (-s e_i)^T acts as v -> v (-s e_i).
    let trans: Vec<QMatrix> = v.proj.iter().map(|e| -&(&v.s * e)).collect();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| NCRationalSeries { row: unit_row(n, a), transitions: trans.clone(), col: unit_col(n, b) })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingValue {
    pub exact: NCRationalSeries,
    pub truncated: TruncSeries,
    pub degree: usize,
}

/// Entry (a, b) = phi(e_a)((1 - z) sigma^-1 e_b), with 1 - z = -sum x_i e_i
/// under Magnus. Realised by a 2n-dimensional linear representation.
pub fn blanchfield_pairing(f: &SeifertForm, degree: usize) -> Vec<Vec<PairingValue>> {
    let n = f.dim();
    let v = &f.module;
    let trans: Vec<QMatrix> = v
        .proj
        .iter()
        .map(|e| {
            let mut t = QMatrix::zeros(2 * n, 2 * n);
            t.set_block(0, n, &-e);
            t.set_block(n, n, &-&(&v.s * e));
            t
        })
        .collect();
    let phit = f.phi.transpose();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut row = QMatrix::zeros(1, 2 * n);
                    row.set_block(0, 0, &(&unit_row(n, a) * &phit));
                    let mut col = QMatrix::zeros(2 * n, 1);
                    col[(n + b, 0)] = Rat::one();
                    let exact = NCRationalSeries { row, transitions: trans.clone(), col };
                    let truncated = exact.truncate(degree);
                    PairingValue { exact, truncated, degree }
                })
                .collect()
        })
        .collect()
}

/// Anti-automorphism induced by z -> z^-1: reverse words and send x_i to
/// (1 + x_i)^-1 - 1.
pub fn series_involution(p: &TruncSeries) -> TruncSeries {
    let d = p.degree();
    let bar_x = |g: usize| {
        let mut s = TruncSeries::zero(d);
        for k in 1..=d {
            let c = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            s.add_term(XWord(vec![g; k]), c);
        }
        s
    };
    let mut out = TruncSeries::zero(d);
    for (w, c) in p.terms() {
        let mut t = TruncSeries::constant(c.clone(), d);
        for &g in w.0.iter().rev() {
            t = t.mul(&bar_x(g));
        }
        out = out.add(&t);
    }
    out
}

/// Group ring elements g_ij with magnus(g_ij) = P_ij - eps bar(P_ji) to
/// degree D, eps = -zeta, searched on words of length <= support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub witness: Vec<Vec<GroupRingElem>>,
    pub support: usize,
    pub degree: usize,
}

/// Column echelon over the Magnus images that remembers combinations.
struct Tracked {
    pivots: HashMap<usize, (SparseRow, SparseRow)>,
}

impl Tracked {
    fn reduce(&self, mut v: SparseRow, mut combo: SparseRow) -> (SparseRow, SparseRow) {
        let mut k = 0;
        while k < v.len() {
            match self.pivots.get(&v[k].0) {
                Some((p, pc)) => {
                    let f = &v[k].1 / &p[0].1;
                    v = axpy(&v, &f, p);
                    combo = axpy(&combo, &f, pc);
                }
                None => k += 1,
            }
        }
        (v, combo)
    }

    fn insert(&mut self, v: SparseRow, id: usize) {
        let (r, c) = self.reduce(v, vec![(id, Rat::one())]);
        if let Some(first) = r.first() {
            self.pivots.insert(first.0, (r, c));
        }
    }
}

fn to_sparse(s: &TruncSeries, index: &HashMap<XWord, usize>) -> SparseRow {
    let mut v: SparseRow = s.terms().iter().map(|(w, c)| (index[w], c.clone())).collect();
    v.sort_by_key(|x| x.0);
    v
}

pub fn symmetry_witness(p: &[Vec<TruncSeries>], zeta: i8, degree: usize, mu: usize) -> Option<SymmetryWitness> {
    let n = p.len();
    let eps = Rat::from_integer((-zeta).into());
    let index: HashMap<XWord, usize> = XWord::all(mu, degree).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    let targets: Vec<Vec<SparseRow>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = p[i][j].truncate(degree).sub(&series_involution(&p[j][i].truncate(degree)).scale(&eps));
                    to_sparse(&d, &index)
                })
                .collect()
        })
        .collect();
    let words = FreeWord::ball(mu, degree / 2);
    let mut ech = Tracked { pivots: HashMap::new() };
    let mut inserted = 0;
    for support in 0..=degree / 2 {
        while inserted < words.len() && words[inserted].len() <= support {
            ech.insert(to_sparse(&magnus_word(&words[inserted], degree), &index), inserted);
            inserted += 1;
        }
        let mut witness = vec![vec![GroupRingElem::zero(); n]; n];
        let mut ok = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let (r, c) = ech.reduce(targets[i][j].clone(), vec![]);
                if !r.is_empty() {
                    ok = false;
                    break 'outer;
                }
                // target - sum c_k m_k = 0, so the witness is sum c_k w_k... with sign.
                witness[i][j] = GroupRingElem::from_terms(c.into_iter().map(|(k, x)| (words[k].clone(), -x)));
            }
        }
        if ok {
            return Some(SymmetryWitness { witness, support, degree });
        }
    }
    None
}

/// Check a witness against P directly.
pub fn verify_witness(p: &[Vec<TruncSeries>], zeta: i8, w: &SymmetryWitness) -> bool {
    let eps = Rat::from_integer((-zeta).into());
    let d = w.degree;
    (0..p.len()).all(|i| {
        (0..p.len()).all(|j| {
            let lhs = super::series::magnus_expand(&w.witness[i][j], d);
            let rhs = p[i][j].truncate(d).sub(&series_involution(&p[j][i].truncate(d)).scale(&eps));
            lhs == rhs
        })
    })
}
