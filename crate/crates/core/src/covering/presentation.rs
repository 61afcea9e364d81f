//! Square presentations over the free group ring: the covering construction,
//! linearisation and the inverse passage back to Seifert modules.

use num_traits::{One, Zero};

use super::series::{magnus_expand, SeriesMatrix};
use super::word::{FreeWord, GroupRingElem};
use crate::arith::{QMatrix, Rat};
use crate::error::CoveringError;
use crate::seifert::{Ring, SeifertModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlkPresentation {
    pub mu: usize,
    pub sigma: Vec<Vec<GroupRingElem>>,
    pub ring: Ring,
}

impl FlkPresentation {
    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    /// Every group element sent to 1.
    pub fn augmentation(&self) -> QMatrix {
        let rows = self.sigma.iter().map(|r| r.iter().map(|g| g.augmentation()).collect()).collect();
        QMatrix::from_rows(rows)
    }

    pub fn validate(&self) -> Result<(), CoveringError> {
        if self.augmentation().det().is_zero() {
            return Err(CoveringError::SingularAugmentation);
        }
        if self.ring == Ring::Z && !self.sigma.iter().flatten().all(|g| g.is_integral()) {
            return Err(CoveringError::NotIntegral);
        }
        Ok(())
    }

    pub fn magnus(&self, degree: usize) -> SeriesMatrix {
        self.sigma.iter().map(|r| r.iter().map(|g| magnus_expand(g, degree)).collect()).collect()
    }

    /// Support of every entry within {1, z_1, ..., z_mu}.
    pub fn is_linear(&self) -> bool {
        self.sigma.iter().flatten().all(|g| g.linear_part(self.mu).is_some())
    }

    /// sigma = A + sum B_i z_i as (A, [B_i]).
    pub fn linear_parts(&self) -> Option<(QMatrix, Vec<QMatrix>)> {
        let n = self.size();
        let mut a = QMatrix::zeros(n, n);
        let mut b = vec![QMatrix::zeros(n, n); self.mu];
        for i in 0..n {
            for j in 0..n {
                let (c0, ci) = self.sigma[i][j].linear_part(self.mu)?;
                a[(i, j)] = c0;
                for (g, c) in ci.into_iter().enumerate() {
                    b[g][(i, j)] = c;
                }
            }
        }
        Some((a, b))
    }

    /// For linear sigma with identity augmentation, the sigma_i with
    /// sigma = 1 + sum sigma_i (1 - z_i).
    pub fn linear_coefficients(&self) -> Result<Vec<QMatrix>, CoveringError> {
        let (_, b) = self.linear_parts().ok_or(CoveringError::NotLinear)?;
        if !self.augmentation().is_identity() {
            return Err(CoveringError::AugmentationNotIdentity);
        }
        Ok(b.iter().map(|m| -m).collect())
    }

    /// 1 + sum sigma_i (1 - z_i).
    pub fn from_linear(sigmas: &[QMatrix]) -> FlkPresentation {
        let n = sigmas[0].rows();
        let mu = sigmas.len();
        let mut sigma = vec![vec![GroupRingElem::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut g = if i == j { GroupRingElem::one() } else { GroupRingElem::zero() };
                for (k, s) in sigmas.iter().enumerate() {
                    let c = &s[(i, j)];
                    g = g.add(&GroupRingElem::constant(c.clone()));
                    g = g.sub(&GroupRingElem::generator(k).scale(c));
                }
                sigma[i][j] = g;
            }
        }
        let ring = if sigmas.iter().all(|s| s.data().iter().all(|x| x.is_integer())) { Ring::Z } else { Ring::Q };
        FlkPresentation { mu, sigma, ring }
    }

    pub fn block_diag(&self, o: &FlkPresentation) -> FlkPresentation {
        let (n, m) = (self.size(), o.size());
        let mut sigma = vec![vec![GroupRingElem::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                sigma[i][j] = self.sigma[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                sigma[n + i][n + j] = o.sigma[i][j].clone();
            }
        }
        let ring = if self.ring == Ring::Z && o.ring == Ring::Z { Ring::Z } else { Ring::Q };
        FlkPresentation { mu: self.mu.max(o.mu), sigma, ring }
    }

    /// Left multiplication by a rational matrix.
    pub fn left_mul(&self, p: &QMatrix) -> FlkPresentation {
        let n = self.size();
        let mut sigma = vec![vec![GroupRingElem::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    sigma[i][j] = sigma[i][j].add(&self.sigma[k][j].scale(&p[(i, k)]));
                }
            }
        }
        FlkPresentation { sigma, ring: Ring::Q, ..self.clone() }
    }

    /// Rows of strings, entry by entry.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.sigma.iter().map(|r| r.iter().map(|g| g.to_string()).collect()).collect()
    }
}

/// sigma = 1 - s (1 - sum z_i e_i) on V tensor Q[F].
pub fn cover_presentation(v: &SeifertModule) -> FlkPresentation {
    let n = v.dim();
    let mut sigma = vec![vec![GroupRingElem::zero(); n]; n];
    let se: Vec<QMatrix> = v.proj.iter().map(|e| &v.s * e).collect();
    for a in 0..n {
        for b in 0..n {
            let mut c0 = -v.s[(a, b)].clone();
            if a == b {
                c0 += Rat::one();
            }
            let mut g = GroupRingElem::constant(c0);
            for (i, m) in se.iter().enumerate() {
                g.add_term(FreeWord::generator(i), m[(a, b)].clone());
            }
            sigma[a][b] = g;
        }
    }
    FlkPresentation { mu: v.mu, sigma, ring: v.ring }
}

/// Record of the moves made by `linearize_presentation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Entry (row, col) term c u v split with a new row and column.
    Stabilize { row: usize, col: usize, first: FreeWord, rest: FreeWord },
    /// Column multiplied on the right by z_g.
    RightUnit { col: usize, generator: usize },
    /// Left multiplication by the inverse augmentation.
    Normalize,
}

fn grow(sigma: &mut Vec<Vec<GroupRingElem>>) -> usize {
    let n = sigma.len();
    for r in sigma.iter_mut() {
        r.push(GroupRingElem::zero());
    }
    sigma.push(vec![GroupRingElem::zero(); n + 1]);
    n
}

/// Cokernel-preserving moves to a presentation supported on {1, z_i} with
/// identity augmentation.
pub fn linearize_presentation(p: &FlkPresentation) -> Result<(FlkPresentation, Vec<Move>), CoveringError> {
    if p.augmentation().det().is_zero() {
        return Err(CoveringError::SingularAugmentation);
    }
    let mut sigma = p.sigma.clone();
    let mut moves = Vec::new();
    // Split words of length >= 2: [[a, -c u], [v, 1]] presents coker(a + c u v).
    loop {
        let n = sigma.len();
        let found = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find_map(|(i, j)| {
            sigma[i][j].terms().iter().find(|(w, _)| w.len() >= 2).map(|(w, c)| (i, j, w.clone(), c.clone()))
        });
        let Some((i, j, w, c)) = found else { break };
        let (u, v) = w.split_first().unwrap();
        let k = grow(&mut sigma);
        sigma[i][j].add_term(w, -c.clone());
        sigma[i][k] = GroupRingElem::term(u.clone(), -c);
        sigma[k][j] = GroupRingElem::word(v.clone());
        sigma[k][k] = GroupRingElem::one();
        moves.push(Move::Stabilize { row: i, col: j, first: u, rest: v });
    }
    // Isolate c z_g^-1 in a new column, then multiply that column by z_g.
    loop {
        let n = sigma.len();
        let found = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find_map(|(i, j)| {
            sigma[i][j].terms().iter().find(|(w, _)| w.letters().first().is_some_and(|l| l.1 == -1)).map(|(w, c)| (i, j, w.clone(), c.clone()))
        });
        let Some((i, j, w, c)) = found else { break };
        let g = w.letters()[0].0;
        let k = grow(&mut sigma);
        sigma[i][j].add_term(w.clone(), -c.clone());
        sigma[i][k] = GroupRingElem::constant(-c);
        sigma[k][j] = GroupRingElem::one();
        sigma[k][k] = GroupRingElem::generator(g);
        moves.push(Move::Stabilize { row: i, col: j, first: w, rest: FreeWord::identity() });
        moves.push(Move::RightUnit { col: k, generator: g });
    }
    let lin = FlkPresentation { mu: p.mu, sigma, ring: p.ring };
    let eps = lin.augmentation();
    if eps.is_identity() {
        return Ok((lin, moves));
    }
    let inv = eps.inverse().ok_or(CoveringError::SingularAugmentation)?;
    moves.push(Move::Normalize);
    let mut out = lin.left_mul(&inv);
    if inv.data().iter().all(|x| x.is_integer()) {
        out.ring = p.ring;
    }
    Ok((out, moves))
}

/// Module on V = Q^{n mu} with block projections and every block row of s
/// equal to (-sigma_1, ..., -sigma_mu), for sigma = 1 + sum sigma_i (1 - z_i).
pub fn seifert_from_flk(p: &FlkPresentation) -> Result<SeifertModule, CoveringError> {
    let sig = p.linear_coefficients()?;
    let n = p.size();
    let mu = p.mu;
    let mut s = QMatrix::zeros(n * mu, n * mu);
    for bi in 0..mu {
        for (bj, m) in sig.iter().enumerate() {
            s.set_block(bi * n, bj * n, &-m);
        }
    }
    let mut v = SeifertModule::with_blocks(s, &vec![n; mu]);
    v.ring = p.ring;
    Ok(v)
}

/// Z -> Q only; the entries are unchanged.
pub fn change_coefficients_presentation(p: &FlkPresentation, target: Ring) -> Result<FlkPresentation, CoveringError> {
    match (p.ring, target) {
        (Ring::Z, Ring::Q) | (Ring::Q, Ring::Q) => Ok(FlkPresentation { ring: Ring::Q, ..p.clone() }),
        (Ring::Z, Ring::Z) => Ok(p.clone()),
        (Ring::Q, Ring::Z) => Err(CoveringError::UnsupportedDirection("Q -> Z".into())),
    }
}

pub fn change_coefficients_module(v: &SeifertModule, target: Ring) -> Result<SeifertModule, CoveringError> {
    match (v.ring, target) {
        (Ring::Q, Ring::Z) => Err(CoveringError::UnsupportedDirection("Q -> Z".into())),
        (_, Ring::Q) => Ok(v.promote()),
        (Ring::Z, Ring::Z) => Ok(v.clone()),
    }
}
