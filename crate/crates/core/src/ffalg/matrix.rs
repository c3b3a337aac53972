use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::Field;

/// Dense row-major matrix over a small finite field.
#[derive(Clone)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
    field: Field,
}

/// Serialized as `{"q": q, "rows": [[..], ..]}` with entries as field codes.
impl serde::Serialize for MatFq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MatFq", 2)?;
        st.serialize_field("q", &self.field.q())?;
        st.serialize_field("rows", &self.to_rows())?;
        st.end()
    }
}

impl PartialEq for MatFq {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field.q() == other.field.q()
            && self.data == other.data
    }
}
impl Eq for MatFq {}

impl Hash for MatFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for MatFq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MatFq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]/F{}", self.field.q())
    }
}

/// Result of Gaussian elimination: reduced row echelon form plus pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: MatFq,
    pub pivots: Vec<usize>,
}

impl MatFq {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        MatFq { rows, cols, data: vec![0; rows * cols], field }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from row-major entries. Panics if the length is wrong or an
    /// entry is not a field element.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        assert!(data.iter().all(|&x| (x as u32) < field.q()), "entry outside F_{}", field.q());
        MatFq { rows, cols, data, field }
    }

    pub fn from_rows(field: Field, rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<u8> = rows.iter().flat_map(|row| {
            assert_eq!(row.len(), c, "ragged rows");
            row.iter().copied()
        }).collect();
        Self::from_vec(field, r, c, data)
    }

    /// Column vector.
    pub fn column(field: Field, v: &[u8]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    /// Elementary matrix `E_{ij}` (single 1 at `(i, j)`).
    pub fn unit(field: Field, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m.set(i, j, 1);
        m
    }

    pub fn block_diag(blocks: &[MatFq]) -> Self {
        let field = blocks[0].field;
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn col(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Canonical byte encoding: dimensions followed by the entry list.
    pub fn encode(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.data.len() + 2);
        v.push(self.rows as u8);
        v.push(self.cols as u8);
        v.extend_from_slice(&self.data);
        v
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &MatFq) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u8::from(r == c)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &MatFq) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatFq) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        MatFq { rows: self.rows, cols: self.cols, data, field: f }
    }

    pub fn sub(&self, other: &MatFq) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        MatFq { rows: self.rows, cols: self.cols, data, field: f }
    }

    pub fn scale(&self, s: u8) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(s, a)).collect();
        MatFq { rows: self.rows, cols: self.cols, data, field: f }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible square matrix.
    pub fn order(&self) -> u64 {
        assert!(self.is_square());
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
            assert!(k < 1 << 24, "matrix is not invertible or order too large");
        }
        k
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn scale_row(&mut self, r: usize, s: u8) {
        let f = self.field;
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, f.mul(s, v));
        }
    }

    /// `row[dst] += s * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, s: u8) {
        let f = self.field;
        for c in 0..self.cols {
            let v = f.add(self.get(dst, c), f.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    pub fn rank(&self) -> usize {
        if self.field.q() == 2 && self.cols <= 64 {
            return f2_rank(&mut self.to_f2_rows().expect("F_2 matrix"));
        }
        self.echelon().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel `{x : M x = 0}`, one basis vector per row of
    /// the returned matrix (so the result is `nullity x cols`). The basis is
    /// the standard one attached to the free columns of the RREF.
    pub fn nullspace(&self) -> MatFq {
        let f = self.field;
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(bi, pc, f.neg(rref.get(pr, fc)));
            }
        }
        basis
    }

    pub fn inverse(&self) -> Option<MatFq> {
        assert!(self.is_square());
        let n = self.rows;
        let f = self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(f, n));
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(e.rref.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> u8 {
        assert!(self.is_square());
        let f = self.field;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1u8;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in c + 1..n {
                let factor = m.get(i, c);
                if factor != 0 {
                    m.add_row_multiple(i, c, f.neg(f.mul(factor, inv)));
                }
            }
        }
        det
    }

    /// True if `M^k = 0` for `k = rows`.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u64).is_zero()
    }

    /// Bit-packed rows over `F_2`: bit `c` of word `r` is entry `(r, c)`.
    pub fn to_f2_rows(&self) -> Option<Vec<u64>> {
        if self.field.q() != 2 || self.cols > 64 {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|r| self.row(r).iter().enumerate().fold(0u64, |w, (c, &b)| w | ((b as u64) << c)))
                .collect(),
        )
    }

    pub fn from_f2_rows(field: Field, rows: &[u64], cols: usize) -> Self {
        assert_eq!(field.q(), 2);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, &w) in rows.iter().enumerate() {
            for c in 0..cols {
                m.set(r, c, ((w >> c) & 1) as u8);
            }
        }
        m
    }

    /// Iterates all `rows x cols` matrices over the field in lexicographic
    /// order of their entry vectors (entry `(0,0)` most significant).
    pub fn all(field: Field, rows: usize, cols: usize) -> impl Iterator<Item = MatFq> {
        let q = field.q() as u64;
        let len = rows * cols;
        let total = q.checked_pow(len as u32).expect("matrix space too large");
        (0..total).map(move |mut idx| {
            let mut data = vec![0u8; len];
            for slot in data.iter_mut().rev() {
                *slot = (idx % q) as u8;
                idx /= q;
            }
            MatFq { rows, cols, data, field }
        })
    }
}

/// Rank of a bit-packed `F_2` matrix; destroys its input.
pub fn f2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows.iter_mut().skip(i + 1) {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Evaluates a linear combination `sum coeffs[i] * basis[i]`.
pub fn combine(basis: &[MatFq], coeffs: &[u8]) -> MatFq {
    let mut acc = MatFq::zeros(basis[0].field, basis[0].rows, basis[0].cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}
