use std::fmt;

use super::field::Field;

/// Univariate polynomial over `F_q`, coefficients low-to-high, no trailing zeros.
#[derive(Clone)]
pub struct PolyFq {
    coeffs: Vec<u8>,
    field: Field,
}

impl PartialEq for PolyFq {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.coeffs == other.coeffs
    }
}
impl Eq for PolyFq {}

impl std::hash::Hash for PolyFq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl PolyFq {
    pub fn new(field: Field, mut coeffs: Vec<u8>) -> Self {
        assert!(coeffs.iter().all(|&c| (c as u32) < field.q()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFq { coeffs, field }
    }

    pub fn zero(field: Field) -> Self {
        PolyFq { coeffs: Vec::new(), field }
    }

    pub fn constant(field: Field, c: u8) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    /// `x - a`
    pub fn linear(field: Field, a: u8) -> Self {
        Self::new(field, vec![field.neg(a), 1])
    }

    pub fn x(field: Field) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn scale(&self, s: u8) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.mul(s, c)).collect())
    }

    pub fn add(&self, other: &PolyFq) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &PolyFq) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &PolyFq) -> Self {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &PolyFq) -> (PolyFq, PolyFq) {
        let f = self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(d.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if lead != 0 {
                let c = f.mul(lead, inv_lead);
                quot[shift] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] = f.sub(rem[shift + i], f.mul(c, dc));
                }
            }
            rem.pop();
        }
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, d: &PolyFq) -> PolyFq {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &PolyFq) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &PolyFq) -> PolyFq {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0u8, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// All monic polynomials of the given degree, lexicographic in the
    /// coefficient vector from the constant term upward.
    pub fn all_monic(field: Field, degree: usize) -> impl Iterator<Item = PolyFq> {
        let q = field.q() as u64;
        let total = q.pow(degree as u32);
        (0..total).map(move |mut idx| {
            let mut c = vec![0u8; degree + 1];
            for slot in c.iter_mut().take(degree) {
                *slot = (idx % q) as u8;
                idx /= q;
            }
            c[degree] = 1;
            PolyFq { coeffs: c, field }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field::field;

    #[test]
    fn division_identity() {
        let f = field(5).unwrap();
        let a = PolyFq::new(f, vec![1, 2, 3, 4, 1]);
        let b = PolyFq::new(f, vec![3, 0, 2]);
        let (qq, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(qq.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_of_products() {
        let f = field(3).unwrap();
        let x1 = PolyFq::linear(f, 1);
        let x2 = PolyFq::linear(f, 2);
        let g = x1.mul(&x2).gcd(&x1.mul(&x1));
        assert_eq!(g, x1);
    }

    #[test]
    fn monic_enumeration_count() {
        let f = field(4).unwrap();
        assert_eq!(PolyFq::all_monic(f, 2).count(), 16);
        assert!(PolyFq::all_monic(f, 2).all(|p| p.is_monic() && p.degree() == Some(2)));
    }
}
