//! Incremental sparse row echelon over Q, for rank computations on large,
//! very sparse systems.

use std::collections::HashMap;

use num_traits::Zero;

use super::rat::Rat;

pub type SparseRow = Vec<(usize, Rat)>;

#[derive(Default)]
pub struct SparseEchelon {
    pivots: HashMap<usize, SparseRow>,
}

pub(crate) fn axpy(row: &SparseRow, f: &Rat, piv: &SparseRow) -> SparseRow {
    // row - f * piv, both sorted by column.
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |x| x.0);
        let cj = piv.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &piv[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against the stored pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|x| !x.1.is_zero());
        row.sort_by_key(|x| x.0);
        let mut k = 0;
        while k < row.len() {
            let c = row[k].0;
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = &row[k].1 / &p[0].1;
                    row = axpy(&row, &f, p);
                }
                None => k += 1,
            }
        }
        row
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        // Store with the first nonzero column as pivot.
        self.pivots.insert(r[0].0, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn rank_of_small_system() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(vec![(0, rat(1)), (2, rat(1))]));
        assert!(e.insert(vec![(1, rat(1)), (2, rat(1))]));
        assert!(!e.insert(vec![(0, rat(2)), (1, rat(-3)), (2, rat(-1))]));
        assert!(e.insert(vec![(2, rat(5))]));
        assert_eq!(e.rank(), 3);
    }
}
