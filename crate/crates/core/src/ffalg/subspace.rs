//! Subspaces of `F_q^n`, stored as reduced row echelon bases.

use super::field::Field;
use super::matrix::MatFq;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    /// RREF basis, one vector per row.
    basis: MatFq,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn row_span(m: &MatFq) -> Self {
        let e = m.echelon();
        let r = e.pivots.len();
        Subspace { ambient: m.cols(), basis: e.rref.block(0, 0, r, m.cols()) }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &MatFq) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        Self::row_span(&MatFq::from_rows(field, vectors))
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: MatFq::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: MatFq::identity(field, ambient) }
    }

    /// Right kernel of `m`.
    pub fn kernel(m: &MatFq) -> Self {
        Self::row_span(&m.nullspace())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &MatFq {
        &self.basis
    }
    pub fn vectors(&self) -> Vec<Vec<u8>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut rows = self.vectors();
        rows.push(v.to_vec());
        MatFq::from_rows(self.field(), &rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.vectors();
        rows.extend(other.vectors());
        Self::span(self.field(), self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = a B1 = b B2  <=>  (a, -b) in the left kernel of [B1; B2]
        let (d1, d2) = (self.dim(), other.dim());
        if d1 == 0 || d2 == 0 {
            return Self::zero(self.field(), self.ambient);
        }
        let f = self.field();
        let mut stacked = MatFq::zeros(f, d1 + d2, self.ambient);
        stacked.set_block(0, 0, &self.basis);
        stacked.set_block(d1, 0, &other.basis);
        let left_kernel = stacked.transpose().nullspace();
        let coeffs = left_kernel.block(0, 0, left_kernel.rows(), d1);
        Self::row_span(&coeffs.mul(&self.basis))
    }

    /// Image under `v -> m v` (column-vector convention).
    pub fn image(&self, m: &MatFq) -> Subspace {
        if self.dim() == 0 {
            return Self::zero(self.field(), m.rows());
        }
        Self::column_span(&m.mul(&self.basis.transpose()))
    }

    /// `m` maps this subspace into itself.
    pub fn is_invariant_under(&self, m: &MatFq) -> bool {
        self.image(m).is_subspace_of(self)
    }

    /// Coordinates of `v` in this subspace's basis, if `v` lies in it.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let f = self.field();
        let d = self.dim();
        // solve c * basis = v
        let mut aug = MatFq::zeros(f, self.ambient, d + 1);
        for i in 0..d {
            for j in 0..self.ambient {
                aug.set(j, i, self.basis.get(i, j));
            }
        }
        for (j, &x) in v.iter().enumerate() {
            aug.set(j, d, x);
        }
        let e = aug.echelon();
        if e.pivots.contains(&d) {
            return None;
        }
        let mut c = vec![0u8; d];
        for (r, &pc) in e.pivots.iter().enumerate() {
            c[pc] = e.rref.get(r, d);
        }
        Some(c)
    }

    /// Every subspace of `F_q^n`, in order of dimension.
    pub fn all(field: Field, ambient: usize) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for k in 0..=ambient {
            for m in MatFq::all(field, k, ambient) {
                let e = m.echelon();
                if e.pivots.len() != k {
                    continue;
                }
                let s = Subspace::row_span(&m);
                if seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field::field;

    #[test]
    fn grassmannian_sizes() {
        // subspaces of F_2^3: 1 + 7 + 7 + 1
        let all = Subspace::all(field(2).unwrap(), 3);
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn intersection_and_sum_dimensions() {
        let f = field(3).unwrap();
        let a = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 2, 0]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.dim() + b.dim(), a.sum(&b).dim() + i.dim());
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = field(5).unwrap();
        let s = Subspace::span(f, 3, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let v: Vec<u8> = (0..3).map(|j| f.add(f.mul(2, s.basis().get(0, j)), f.mul(3, s.basis().get(1, j)))).collect();
        assert_eq!(s.coordinates(&v), Some(vec![2, 3]));
        assert_eq!(s.coordinates(&[0, 0, 1]), None);
    }
}
