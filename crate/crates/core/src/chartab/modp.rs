//! Arithmetic and small dense linear algebra over a prime field `F_p`, `p < 2^32`.

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of `F_p^*`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("prime modulus has a primitive root")
}

/// Multiplicative order of `a` modulo `p`.
pub fn order_mod(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        k += 1;
    }
    k
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Unique representative of `x` in `[0, bound]`.
pub fn lift_small(x: u64, bound: u64, p: u64) -> Result<u64> {
    let x = x % p;
    if bound >= p {
        return Err(Error::InvalidArgument(format!("lift bound {bound} must be below p = {p}")));
    }
    if x <= bound {
        Ok(x)
    } else {
        Err(Error::LiftOutOfRange { value: x, bound, p })
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = sub_mod(*x, mul_mod(f, y, p), p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right kernel basis of the matrix with the given rows (`ncols` unknowns).
pub fn nullspace(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, m[pr][fc], p);
            }
            v
        })
        .collect()
}
