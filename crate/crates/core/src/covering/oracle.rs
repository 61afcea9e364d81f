//! Finite linear-algebra shadows of a presentation, used to compare
//! cokernels without deciding anything in the localisation.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::presentation::FlkPresentation;
use super::series::{TruncSeries, XWord};
use super::word::{FreeWord, GroupRingElem};
use crate::arith::sparse::{SparseEchelon, SparseRow};
use crate::arith::Rat;

/// Image of g under z_i -> lam_i (1 + x_i), truncated at degree d.
pub fn twisted_expand(g: &GroupRingElem, d: usize, lam: &[i64]) -> TruncSeries {
    let letter = |i: usize, e: i8| {
        let l = Rat::from_integer(lam[i].into());
        if e > 0 {
            TruncSeries::constant(l.clone(), d).add(&TruncSeries::x(i, d).scale(&l))
        } else {
            let mut s = TruncSeries::zero(d);
            for k in 0..=d {
                let c = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
                s.add_term(XWord(vec![i; k]), c / &l);
            }
            s
        }
    };
    let mut out = TruncSeries::zero(d);
    for (w, c) in g.terms() {
        let mut t = TruncSeries::constant(c.clone(), d);
        for &(i, e) in w.letters() {
            t = t.mul(&letter(i, e));
        }
        out = out.add(&t);
    }
    out
}

/// dim_Q of the cokernel of sigma acting by left multiplication on
/// R_d^n, R_d = Q<x>/(degree > d), with z_i -> lam_i (1 + x_i).
pub fn twisted_corank(p: &FlkPresentation, d: usize, lam: &[i64]) -> usize {
    let n = p.size();
    let words = XWord::all(p.mu, d);
    let index: HashMap<&XWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let m = words.len();
    let rho: Vec<Vec<TruncSeries>> = p.sigma.iter().map(|r| r.iter().map(|g| twisted_expand(g, d, lam)).collect()).collect();
    let mut ech = SparseEchelon::new();
    for b in 0..n {
        for u in &words {
            let basis = TruncSeries::term(u.clone(), Rat::one(), d);
            let mut row: SparseRow = Vec::new();
            for a in 0..n {
                for (w, c) in rho[a][b].mul(&basis).terms() {
                    row.push((a * m + index[w], c.clone()));
                }
            }
            ech.insert(row);
        }
    }
    n * m - ech.rank()
}

/// Equations are indexed longest word first, so elimination proceeds from
/// the leaves of the word tree inwards and fill-in stays local.
fn equation_index(p: &FlkPresentation, r: usize) -> impl Fn(&FreeWord, usize) -> usize {
    let reach = r + p.sigma.iter().flatten().map(|g| g.max_word_len()).max().unwrap_or(0);
    let n = p.size();
    let index: HashMap<FreeWord, usize> = FreeWord::ball(p.mu, reach).into_iter().rev().enumerate().map(|(i, w)| (w, i)).collect();
    move |w: &FreeWord, a: usize| index[w] * n + a
}

/// Number of columns of the identity not reachable as sigma Y with Y
/// supported on reduced words of length <= r. Zero for every large r
/// exactly when sigma is invertible over the group ring.
pub fn reachability_defect(p: &FlkPresentation, r: usize) -> usize {
    let n = p.size();
    let ball = FreeWord::ball(p.mu, r);
    let key = equation_index(p, r);
    let mut ech = SparseEchelon::new();
    for u in ball.iter().rev() {
        for c in 0..n {
            let mut acc: HashMap<usize, Rat> = HashMap::new();
            for a in 0..n {
                for (g, coef) in p.sigma[a][c].terms() {
                    *acc.entry(key(&g.mul(u), a)).or_insert_with(Rat::zero) += coef;
                }
            }
            ech.insert(acc.into_iter().filter(|x| !x.1.is_zero()).collect());
        }
    }
    (0..n).filter(|&b| !ech.reduce(vec![(key(&FreeWord::identity(), b), Rat::one())]).is_empty()).count()
}

/// Smallest radius r <= max_radius at which sigma has a right inverse
/// supported on the ball of radius r.
pub fn inverse_radius(p: &FlkPresentation, max_radius: usize) -> Option<usize> {
    (0..=max_radius).find(|&r| reachability_defect(p, r) == 0)
}
