use num_traits::Zero;

use super::matrix::QMatrix;
use super::rat::Rat;

/// Subspace of Q^n held as a reduced row echelon basis.
///
/// The coordinates of a member vector are its entries at the pivot
/// columns, and the standard vectors at non-pivot columns give the
/// section used for quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: QMatrix::zeros(0, n), pivots: vec![] }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient: n, basis: QMatrix::identity(n), pivots: (0..n).collect() }
    }

    pub fn span(n: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        let m = QMatrix::from_rows(vectors.to_vec());
        assert_eq!(m.cols(), n);
        Self::from_row_matrix(&m)
    }

    /// Row space of `m`.
    pub fn from_row_matrix(m: &QMatrix) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace { ambient: m.cols(), basis: r.submatrix(&rows, &cols), pivots }
    }

    /// Column space of `m`.
    pub fn column_space(m: &QMatrix) -> Self {
        Self::from_row_matrix(&m.transpose())
    }

    /// Null space of `m` (as a map Q^cols -> Q^rows).
    pub fn kernel_of(m: &QMatrix) -> Self {
        Self::span(m.cols(), &m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    /// n x k matrix whose columns are the basis.
    pub fn basis_matrix(&self) -> QMatrix {
        self.basis.transpose()
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for j in 0..self.ambient {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    w[j] -= &c * b;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[Rat]) -> Vec<Rat> {
        debug_assert!(self.contains(v));
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Non-pivot indices: the standard section of the quotient.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|j| !self.pivots.contains(j)).collect()
    }

    /// Coordinates of the class of `v` in Q^n / self.
    pub fn quotient_coords(&self, v: &[Rat]) -> Vec<Rat> {
        let w = self.reduce(v);
        self.complement_indices().into_iter().map(|j| w[j].clone()).collect()
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut v = self.basis_vectors();
        v.extend(o.basis_vectors());
        Subspace::span(self.ambient, &v)
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        if self.is_zero() || o.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let a = self.basis_matrix();
        let b = o.basis_matrix();
        let m = a.hstack(&(-&b));
        let vecs: Vec<Vec<Rat>> = m
            .kernel()
            .into_iter()
            .map(|k| a.mul_vec(&k[..self.dim()]))
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Image under a linear map given by a matrix.
    pub fn image(&self, m: &QMatrix) -> Subspace {
        let vecs: Vec<Vec<Rat>> = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vecs)
    }

    pub fn is_invariant(&self, m: &QMatrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Matrix of `m` restricted to this (invariant) subspace, in echelon coordinates.
    pub fn restrict(&self, m: &QMatrix) -> QMatrix {
        let cols: Vec<Vec<Rat>> = self.basis_vectors().iter().map(|v| self.coords(&m.mul_vec(v))).collect();
        QMatrix::from_columns(self.dim(), &cols)
    }

    /// {x : <w, x> = 0 for all w in self}.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        Subspace::kernel_of(&self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn kernel_section_is_standard() {
        let m = QMatrix::from_i64(&[&[0, 0, 0, -1, 0, 0]]);
        let k = Subspace::kernel_of(&m);
        assert_eq!(k.pivots(), &[0, 1, 2, 4, 5]);
        let line = Subspace::span(5, &[v(&[1, 0, 0, 0, 0])]);
        assert_eq!(line.complement_indices(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn sums_and_intersections() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 1]), v(&[0, 0, 1])]);
        assert_eq!(a.sum(&b).dim(), 3);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        assert_eq!(a.annihilator(), Subspace::span(3, &[v(&[0, 0, 1])]));
    }
}

/// Incremental echelon used when a basis is grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBuilder {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl EchelonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (p, r) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (x, y) in w.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn add(&mut self, v: &[Rat]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = w[p].recip();
                let w: Vec<Rat> = w.iter().map(|x| x * &inv).collect();
                for (_, r) in self.rows.iter_mut() {
                    if !r[p].is_zero() {
                        let f = r[p].clone();
                        for (x, y) in r.iter_mut().zip(&w) {
                            if !y.is_zero() {
                                *x -= &f * y;
                            }
                        }
                    }
                }
                self.rows.push((p, w));
                true
            }
        }
    }
}
