//! Small finite fields `F_q`, `q <= 9`, with full addition and multiplication
//! tables.
//!
//! Elements are `u8` in `0..q`. For `q = p^d` with `d > 1` the integer `a`
//! encodes the polynomial `sum a_i x^i` (base-`p` digits `a_i`) modulo a fixed
//! irreducible modulus.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_Q: usize = 9;

/// Supported field orders.
pub const SUPPORTED_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

pub struct FieldDesc {
    p: u8,
    d: u8,
    q: u8,
    /// Modulus coefficients low-to-high (monic, degree `d`); `[0, 1]` for prime fields.
    modulus: Vec<u8>,
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
    /// `log[a]` for `a != 0` w.r.t. `generator`; `exp[i] = generator^i`.
    log: [u8; MAX_Q],
    exp: [u8; MAX_Q],
    generator: u8,
}

/// Fields are interned; a `Field` is a cheap copyable handle.
pub type Field = &'static FieldDesc;

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn modulus_for(p: u8, d: u8) -> Vec<u8> {
    match (p, d) {
        (_, 1) => vec![0, 1],
        // x^2 + x + 1
        (2, 2) => vec![1, 1, 1],
        // x^3 + x + 1
        (2, 3) => vec![1, 1, 0, 1],
        // x^2 + x + 2, primitive over F_3
        (3, 2) => vec![2, 1, 1],
        _ => unreachable!("unsupported extension"),
    }
}

fn build(q: u8) -> FieldDesc {
    let (p, d) = match q {
        2 | 3 | 5 | 7 => (q, 1),
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        _ => unreachable!(),
    };
    let modulus = modulus_for(p, d);
    let digits = |a: u8| -> Vec<u8> {
        let mut v = Vec::with_capacity(d as usize);
        let mut a = a;
        for _ in 0..d {
            v.push(a % p);
            a /= p;
        }
        v
    };
    let undigits = |v: &[u8]| -> u8 { v.iter().rev().fold(0u8, |acc, &c| acc * p + c) };

    let mut add = [[0u8; MAX_Q]; MAX_Q];
    let mut mul = [[0u8; MAX_Q]; MAX_Q];
    for a in 0..q {
        for b in 0..q {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a as usize][b as usize] = undigits(&s);

            // schoolbook product then reduce by the monic modulus
            let mut prod = vec![0u16; 2 * d as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p as u16;
                }
            }
            for top in (d as usize..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                prod[top] = 0;
                for (k, &m) in modulus.iter().enumerate().take(d as usize) {
                    let idx = top - d as usize + k;
                    let sub = (c * m as u16) % p as u16;
                    prod[idx] = (prod[idx] + p as u16 - sub) % p as u16;
                }
            }
            let r: Vec<u8> = prod[..d as usize].iter().map(|&c| c as u8).collect();
            mul[a as usize][b as usize] = undigits(&r);
        }
    }
    let mut neg = [0u8; MAX_Q];
    let mut inv = [0u8; MAX_Q];
    for a in 0..q as usize {
        for b in 0..q as usize {
            if add[a][b] == 0 {
                neg[a] = b as u8;
            }
            if mul[a][b] == 1 {
                inv[a] = b as u8;
            }
        }
    }
    let order = |g: u8| -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = mul[x as usize][g as usize];
            k += 1;
        }
        k
    };
    let generator = (1..q).find(|&g| order(g) == q as usize - 1).expect("cyclic group");
    let mut log = [0u8; MAX_Q];
    let mut exp = [0u8; MAX_Q];
    let mut x = 1u8;
    for i in 0..(q - 1) {
        exp[i as usize] = x;
        log[x as usize] = i;
        x = mul[x as usize][generator as usize];
    }
    FieldDesc { p, d, q, modulus, add, mul, neg, inv, log, exp, generator }
}

static FIELDS: OnceLock<Vec<FieldDesc>> = OnceLock::new();

/// Returns the interned field of order `q`.
pub fn field(q: u32) -> Result<Field> {
    let pos = SUPPORTED_Q.iter().position(|&s| s == q).ok_or(Error::UnsupportedField(q))?;
    let all = FIELDS.get_or_init(|| SUPPORTED_Q.iter().map(|&s| build(s as u8)).collect());
    Ok(&all[pos])
}

impl FieldDesc {
    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }
    #[inline]
    pub fn degree(&self) -> u32 {
        self.d as u32
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q as u32
    }
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }
    pub fn generator(&self) -> u8 {
        self.generator
    }
    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][self.neg[b as usize] as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in {self:?}");
        self.inv[a as usize]
    }
    pub fn log(&self, a: u8) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize] as u32)
    }
    pub fn exp(&self, i: u32) -> u8 {
        self.exp[(i % (self.q as u32 - 1)) as usize]
    }
    pub fn pow(&self, a: u8, e: u64) -> u8 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        self.exp(((self.log[a as usize] as u64 * e) % (self.q as u64 - 1)) as u32)
    }
    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }
    pub fn elements(&self) -> std::ops::Range<u8> {
        0..self.q
    }
    pub fn nonzero(&self) -> std::ops::Range<u8> {
        1..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_exhaustively() {
        for &q in &SUPPORTED_Q {
            let f = field(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)), "q={q}");
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for &q in &SUPPORTED_Q {
            let f = field(q).unwrap();
            let seen: std::collections::HashSet<u8> = (0..q - 1).map(|i| f.exp(i)).collect();
            assert_eq!(seen.len(), q as usize - 1);
            for a in f.nonzero() {
                assert_eq!(f.exp(f.log(a).unwrap()), a);
                assert_eq!(f.pow(a, q as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn unsupported_orders_rejected() {
        assert!(matches!(field(6), Err(Error::UnsupportedField(6))));
        assert!(field(11).is_err());
    }
}
