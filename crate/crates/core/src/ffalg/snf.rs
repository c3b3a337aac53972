//! Smith normal form of `xI - g` over `F_q[x]` and polynomial factorisation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::Field;
use super::matrix::MatFq;
use super::poly::PolyFq;

/// Invariant factors `f_1 | f_2 | ... | f_r` of `xI - g`, monic, units dropped.
pub fn invariant_factors(g: &MatFq) -> Vec<PolyFq> {
    assert!(g.is_square(), "invariant factors need a square matrix");
    let f = g.field();
    let n = g.rows();
    let mut a: Vec<Vec<PolyFq>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut coeffs = vec![f.neg(g.get(r, c))];
                    if r == c {
                        coeffs.push(1);
                    }
                    PolyFq::new(f, coeffs)
                })
                .collect()
        })
        .collect();
    smith_diagonal(&mut a)
        .into_iter()
        .filter(|p| !p.is_unit())
        .collect()
}

/// Reduces a square polynomial matrix in place and returns the monic
/// diagonal of its Smith form. Pivots are minimal-degree entries, ties broken
/// by `(row, col)` order.
pub fn smith_diagonal(a: &mut [Vec<PolyFq>]) -> Vec<PolyFq> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (r, row) in a.iter().enumerate().skip(t) {
                for (c, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, r, c));
                        }
                    }
                }
            }
            let Some((_, pr, pc)) = best else {
                break;
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (quot, rem) = a[i][t].div_rem(&pivot);
                for j in t..n {
                    let v = a[i][j].sub(&quot.mul(&a[t][j]));
                    a[i][j] = v;
                }
                clean &= rem.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (quot, rem) = a[t][j].div_rem(&pivot);
                for row in a.iter_mut().skip(t) {
                    let v = row[j].sub(&quot.mul(&row[t]));
                    row[j] = v;
                }
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block for the divisibility chain
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !pivot.divides(&a[i][j])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[t][j].add(&a[i][j]);
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic());
    }
    diag
}

/// Characteristic polynomial `det(xI - g)`, as the product of invariant factors.
pub fn char_poly(g: &MatFq) -> PolyFq {
    invariant_factors(g)
        .iter()
        .fold(PolyFq::one(g.field()), |acc, p| acc.mul(p))
}

/// Minimal polynomial: the last invariant factor.
pub fn min_poly(g: &MatFq) -> PolyFq {
    invariant_factors(g).pop().unwrap_or_else(|| PolyFq::one(g.field()))
}

type IrredCache = Mutex<HashMap<(u32, usize), Arc<Vec<PolyFq>>>>;

static IRREDUCIBLES: OnceLock<IrredCache> = OnceLock::new();

/// Monic irreducible polynomials of the given degree, in `all_monic` order.
/// Built once per `(q, degree)` by sieving with lower-degree irreducibles.
pub fn monic_irreducibles(field: Field, degree: usize) -> Arc<Vec<PolyFq>> {
    let cache = IRREDUCIBLES.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(field.q(), degree)) {
        return v.clone();
    }
    let smaller: Vec<Arc<Vec<PolyFq>>> = (1..=degree / 2).map(|d| monic_irreducibles(field, d)).collect();
    let list: Vec<PolyFq> = PolyFq::all_monic(field, degree)
        .filter(|cand| degree >= 1 && smaller.iter().all(|l| l.iter().all(|p| !p.divides(cand))))
        .collect();
    let arc = Arc::new(list);
    cache.lock().unwrap().insert((field.q(), degree), arc.clone());
    arc
}

/// Factorisation into monic irreducibles with multiplicities, sorted by
/// (degree, coefficients). The leading unit is dropped.
pub fn poly_factor(p: &PolyFq) -> Vec<(PolyFq, u32)> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let field = p.field();
    let mut rest = p.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        for irr in monic_irreducibles(field, d).iter() {
            let mut mult = 0;
            while irr.divides(&rest) {
                rest = rest.div_rem(irr).0;
                mult += 1;
            }
            if mult > 0 {
                out.push((irr.clone(), mult));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        // no factor of degree <= deg/2 remains, so what is left is irreducible
        match out.iter_mut().find(|(f, _)| *f == rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    out
}
