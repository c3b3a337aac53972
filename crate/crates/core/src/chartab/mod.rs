//! Modular character tables by the Dixon-Schneider method.
//!
//! All character values live in `F_p` with `p = 1 (mod exp G)`, so every
//! complex character value reduces to a residue under one fixed ring map
//! `Z[zeta_e] -> F_p`. The quantities consumed downstream (degrees,
//! multiplicities, dimensions of invariants) are small nonnegative integers
//! and are recovered from their residues with [`lift_small`].

pub mod modp;
mod source;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::MatFq;
use crate::groups::{exponent, ClassConstants, ConjClassTable, FiniteGroup, GroupSpec};
pub use modp::lift_small;
pub use source::{compute_gl_table, default_gl_prime, gl_exponent, levi_table, DirectTables, MemoTables, TableSource};
use modp::{add_mod, ceil_sqrt, inv_mod, isqrt, is_prime, mul_mod, nullspace, order_mod, pow_mod, primitive_root, rref, sub_mod};

/// Upper limit for the admissible-prime search.
pub const PRIME_SEARCH_CAP: u64 = 10_000_000;

/// Prime `p` with a fixed element `omega` of multiplicative order `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeChoice {
    pub p: u64,
    pub omega: u64,
    pub e: u64,
}

/// Smallest prime `p = 1 (mod e)` with `p > 2 ceil(sqrt(order))`.
pub fn choose_prime(e: u64, order: u64) -> Result<PrimeChoice> {
    choose_prime_after(e, order, 0)
}

/// Smallest admissible prime strictly greater than `after`.
pub fn choose_prime_after(e: u64, order: u64, after: u64) -> Result<PrimeChoice> {
    assert!(e >= 1 && order >= 1);
    let floor = (2 * ceil_sqrt(order)).max(after);
    let mut p = floor + 1;
    // first candidate congruent to 1 mod e
    let r = (p - 1) % e;
    if r != 0 {
        p += e - r;
    }
    while p <= PRIME_SEARCH_CAP {
        if is_prime(p) {
            let g = primitive_root(p);
            let omega = pow_mod(g, (p - 1) / e, p);
            return Ok(PrimeChoice { p, omega, e });
        }
        p += e;
    }
    Err(Error::SearchExhausted(PRIME_SEARCH_CAP))
}

/// Character table with values in `F_p`.
#[derive(Clone, Debug)]
pub struct ModularCharTable {
    prime: PrimeChoice,
    classes: Arc<ConjClassTable>,
    /// `values[i][j]`: irreducible `i` at class `j`.
    values: Vec<Vec<u64>>,
    degrees: Vec<u64>,
    /// For product tables, the factor row index of each row.
    labels: Option<Vec<Vec<usize>>>,
}

impl ModularCharTable {
    pub fn p(&self) -> u64 {
        self.prime.p
    }
    pub fn prime(&self) -> PrimeChoice {
        self.prime
    }
    pub fn omega(&self) -> u64 {
        self.prime.omega
    }
    pub fn classes(&self) -> &ConjClassTable {
        &self.classes
    }
    pub fn classes_arc(&self) -> Arc<ConjClassTable> {
        self.classes.clone()
    }
    pub fn num_irreducibles(&self) -> usize {
        self.values.len()
    }
    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }
    pub fn row(&self, i: usize) -> &[u64] {
        &self.values[i]
    }
    pub fn value(&self, i: usize, j: usize) -> u64 {
        self.values[i][j]
    }
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }
    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }
    pub fn labels(&self) -> Option<&[Vec<usize>]> {
        self.labels.as_deref()
    }
    /// `sqrt|G|`, an upper bound for degrees and for every multiplicity
    /// computed against this table.
    pub fn lift_bound(&self) -> u64 {
        isqrt(self.classes.order())
    }

    /// Row of the contragredient of irreducible `i`.
    pub fn dual_row(&self, i: usize) -> Vec<u64> {
        let inv = self.classes.inverse_map();
        (0..self.classes.num_classes()).map(|j| self.values[i][inv[j]]).collect()
    }

    /// Index of the contragredient of irreducible `i`.
    pub fn dual_index(&self, i: usize) -> usize {
        let d = self.dual_row(i);
        self.values.iter().position(|r| *r == d).expect("table closed under duals")
    }

    /// Index of the row equal to `row`, if any.
    pub fn find_row(&self, row: &[u64]) -> Option<usize> {
        self.values.iter().position(|r| r == row)
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        self.find_row(&vec![1; self.classes.num_classes()]).expect("trivial character present")
    }

    pub fn from_parts(
        prime: PrimeChoice,
        classes: Arc<ConjClassTable>,
        values: Vec<Vec<u64>>,
        degrees: Vec<u64>,
    ) -> Result<Self> {
        let t = ModularCharTable { prime, classes, values, degrees, labels: None };
        t.validate()?;
        Ok(t)
    }

    /// Checks every table invariant: square shape, degree bounds and sum of
    /// squares, degrees divide `|G|`, row and column orthogonality mod `p`.
    pub fn validate(&self) -> Result<()> {
        let p = self.prime.p;
        let ct = &self.classes;
        let r = ct.num_classes();
        let order = ct.order();
        let fail = |what: &str| Err(Error::InvalidArgument(format!("character table for {}: {what}", ct.spec())));
        if !(p - 1).is_multiple_of(self.prime.e) || p <= 2 * ceil_sqrt(order) || order_mod(self.prime.omega, p) != self.prime.e {
            return fail("inadmissible prime");
        }
        if self.values.len() != r || self.degrees.len() != r || self.values.iter().any(|row| row.len() != r) {
            return fail("table is not square");
        }
        let bound = isqrt(order);
        for (row, &d) in self.values.iter().zip(&self.degrees) {
            if d == 0 || d > bound || row[0] != d % p || !order.is_multiple_of(d) {
                return fail("bad degree");
            }
        }
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != order {
            return fail("sum of squared degrees differs from |G|");
        }
        for i in 0..r {
            for i2 in 0..r {
                if inner_product(self, &self.values[i], &self.values[i2]) != u64::from(i == i2) {
                    return fail("row orthogonality");
                }
            }
        }
        let inv = ct.inverse_map();
        for j in 0..r {
            for j2 in 0..r {
                let s = (0..r).fold(0, |acc, i| add_mod(acc, mul_mod(self.values[i][j], self.values[i][inv[j2]], p), p));
                let expected = if j == j2 { ct.centralizer_order(j) % p } else { 0 };
                if s != expected {
                    return fail("column orthogonality");
                }
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> CharTableRecord {
        let ct = &self.classes;
        CharTableRecord {
            group: ct.spec().to_string(),
            degree: ct.spec().degree(),
            q: ct.reps()[0].field().q(),
            order: ct.order(),
            prime: self.prime,
            reps: ct.reps().iter().map(|m| m.entries().to_vec()).collect(),
            sizes: ct.sizes().to_vec(),
            inverse_map: ct.inverse_map().to_vec(),
            values: self.values.clone(),
            degrees: self.degrees.clone(),
        }
    }

    /// Rebuilds a table from its record; the result is fully re-validated.
    pub fn from_record(spec: &GroupSpec, rec: &CharTableRecord) -> Result<Self> {
        if rec.group != spec.to_string() || rec.degree != spec.degree() {
            return Err(Error::InvalidArgument(format!("record is for {}, not {spec}", rec.group)));
        }
        let f = spec.field()?;
        let n = spec.degree();
        let reps = rec
            .reps
            .iter()
            .map(|e| {
                if e.len() != n * n || e.iter().any(|&x| x as u32 >= f.q()) {
                    return Err(Error::InvalidArgument("bad representative".into()));
                }
                Ok(MatFq::from_vec(f, n, n, e.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let classes = ConjClassTable::from_parts(spec.clone(), rec.order, reps, rec.sizes.clone(), rec.inverse_map.clone())?;
        Self::from_parts(rec.prime, Arc::new(classes), rec.values.clone(), rec.degrees.clone())
    }
}

/// Integer-only serialised form of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableRecord {
    pub group: String,
    pub degree: usize,
    pub q: u32,
    pub order: u64,
    pub prime: PrimeChoice,
    pub reps: Vec<Vec<u8>>,
    pub sizes: Vec<u64>,
    pub inverse_map: Vec<usize>,
    pub values: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
}

/// `|G|^{-1} sum_j |C_j| u[j] v[j*]` in `F_p`.
pub fn inner_product(t: &ModularCharTable, u: &[u64], v: &[u64]) -> u64 {
    let p = t.p();
    let ct = t.classes();
    let inv = ct.inverse_map();
    let s = (0..ct.num_classes()).fold(0, |acc, j| {
        add_mod(acc, mul_mod(ct.size(j) % p, mul_mod(u[j], v[inv[j]], p), p), p)
    });
    mul_mod(s, inv_mod(ct.order() % p, p), p)
}

/// Dixon-Schneider over `F_p`. Common eigenspaces of the class matrices
/// `(M_i)_{jk} = a_{ijk}` are split with `M_0, M_1, ...` in order, always by
/// the first matrix acting non-scalarly. Rows are sorted by
/// `(degree, values)`.
pub fn dixon_table(group: &FiniteGroup, classes: Arc<ConjClassTable>, prime: PrimeChoice) -> Result<ModularCharTable> {
    let cc = ClassConstants::compute(group, &classes)?;
    dixon_from_constants(classes, &cc, prime)
}

/// As [`dixon_table`], with the prime chosen from the group itself.
pub fn dixon_table_auto(group: &FiniteGroup, classes: Arc<ConjClassTable>) -> Result<ModularCharTable> {
    let prime = choose_prime(exponent(&classes), classes.order())?;
    dixon_table(group, classes, prime)
}

pub fn dixon_from_constants(classes: Arc<ConjClassTable>, cc: &ClassConstants, prime: PrimeChoice) -> Result<ModularCharTable> {
    let p = prime.p;
    let r = classes.num_classes();
    let order = classes.order();
    if !(p - 1).is_multiple_of(exponent(&classes)) || p <= 2 * ceil_sqrt(order) {
        return Err(Error::InvalidArgument(format!("prime {p} is not admissible for {}", classes.spec())));
    }
    // columns M_i v for a vector v: (M_i v)_j = sum_k a_{ijk} v_k
    let apply = |i: usize, v: &[u64]| -> Vec<u64> {
        (0..r)
            .map(|j| (0..r).fold(0, |acc, k| add_mod(acc, mul_mod(cc.get(i, j, k) % p, v[k], p), p)))
            .collect()
    };

    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    let mut done: Vec<Vec<u64>> = Vec::new();
    while let Some(mut basis) = pending.pop() {
        if basis.len() == 1 {
            done.push(basis.pop().unwrap());
            continue;
        }
        let pivots = rref(&mut basis, p);
        let s = basis.len();
        let mut split = false;
        for i in 0..r {
            // restriction of M_i to span(basis) in basis coordinates; the RREF
            // coordinates of a member vector are its entries at the pivots
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(i, b)).collect();
            let restricted: Vec<Vec<u64>> = (0..s).map(|u| (0..s).map(|t| images[t][pivots[u]]).collect()).collect();
            let scalar = restricted[0][0];
            let is_scalar = (0..s).all(|u| (0..s).all(|t| restricted[u][t] == if u == t { scalar } else { 0 }));
            if is_scalar {
                continue;
            }
            let mut pieces = Vec::new();
            let mut total = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = (0..s)
                    .map(|u| (0..s).map(|t| if u == t { sub_mod(restricted[u][t], lambda, p) } else { restricted[u][t] }).collect())
                    .collect();
                let ns = nullspace(&shifted, s, p);
                if ns.is_empty() {
                    continue;
                }
                total += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|j| (0..s).fold(0, |acc, t| add_mod(acc, mul_mod(c[t], basis[t][j], p), p)))
                            .collect()
                    })
                    .collect();
                pieces.push(vecs);
                if total == s {
                    break;
                }
            }
            if total != s {
                return Err(Error::SplitFailure { dim: s, p });
            }
            pending.extend(pieces);
            split = true;
            break;
        }
        if !split {
            return Err(Error::SplitFailure { dim: s, p });
        }
    }

    let sqrt_order = isqrt(order);
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for w in done {
        if w[0] == 0 {
            return Err(Error::SplitFailure { dim: 1, p });
        }
        let scale = inv_mod(w[0], p);
        let w: Vec<u64> = w.iter().map(|&x| mul_mod(x, scale, p)).collect();
        let inv = classes.inverse_map();
        let norm = (0..r).fold(0, |acc, k| {
            add_mod(acc, mul_mod(mul_mod(w[k], w[inv[k]], p), inv_mod(classes.size(k) % p, p), p), p)
        });
        let d_sq = mul_mod(order % p, inv_mod(norm, p), p);
        let d = (1..=sqrt_order)
            .find(|&d| d * d % p == d_sq)
            .ok_or(Error::LiftOutOfRange { value: d_sq, bound: sqrt_order, p })?;
        let values: Vec<u64> = (0..r)
            .map(|k| mul_mod(mul_mod(d, w[k], p), inv_mod(classes.size(k) % p, p), p))
            .collect();
        rows.push((d, values));
    }
    rows.sort();
    let (degrees, values) = rows.into_iter().unzip();
    ModularCharTable::from_parts(prime, classes, values, degrees)
}

/// Table of a Levi group `GL_{n_1} x ... x GL_{n_l}` as the tensor product of
/// factor tables sharing one prime. Row labels record the factor rows.
pub fn product_table(levi_classes: Arc<ConjClassTable>, factors: &[&ModularCharTable]) -> Result<ModularCharTable> {
    let GroupSpec::Levi { composition, .. } = levi_classes.spec().clone() else {
        return Err(Error::InvalidArgument("product tables need a Levi group".into()));
    };
    if composition.len() != factors.len() {
        return Err(Error::InvalidArgument("one factor table per block".into()));
    }
    let prime = factors[0].prime();
    if factors.iter().any(|f| f.p() != prime.p) {
        return Err(Error::InvalidArgument("factor tables must share the prime".into()));
    }
    let p = prime.p;
    let offsets: Vec<usize> = composition.iter().scan(0, |a, &c| { let o = *a; *a += c; Some(o) }).collect();
    // factor class of each block of each Levi class representative
    let class_tuples: Vec<Vec<usize>> = levi_classes
        .reps()
        .iter()
        .map(|rep| {
            factors
                .iter()
                .zip(&composition)
                .zip(&offsets)
                .map(|((f, &c), &o)| f.classes().identify(&rep.block(o, o, c, c)).expect("block in factor group"))
                .collect()
        })
        .collect();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        labels = labels
            .into_iter()
            .flat_map(|l| (0..f.num_irreducibles()).map(move |i| { let mut l = l.clone(); l.push(i); l }))
            .collect();
    }
    let mut rows: Vec<(u64, Vec<u64>, Vec<usize>)> = labels
        .into_iter()
        .map(|label| {
            let deg = label.iter().zip(factors).map(|(&i, f)| f.degree(i)).product();
            let vals = class_tuples
                .iter()
                .map(|tuple| {
                    tuple.iter().zip(&label).zip(factors).fold(1, |acc, ((&c, &i), f)| mul_mod(acc, f.value(i, c), p))
                })
                .collect();
            (deg, vals, label)
        })
        .collect();
    rows.sort();
    let mut degrees = Vec::new();
    let mut values = Vec::new();
    let mut out_labels = Vec::new();
    for (d, v, l) in rows {
        degrees.push(d);
        values.push(v);
        out_labels.push(l);
    }
    let mut t = ModularCharTable::from_parts(prime, levi_classes, values, degrees)?;
    t.labels = Some(out_labels);
    Ok(t)
}

/// Class-level check that the Cartan involution `g -> (g^t)^{-1}` sends every
/// class of `GL_N(F_q)` to its inverse class.
pub fn kappa_selfduality_check(classes: &ConjClassTable) -> bool {
    (0..classes.num_classes()).all(|j| {
        let k = classes.rep(j).transpose().inverse().expect("invertible");
        classes.identify(&k) == Some(classes.inverse_class(j))
    })
}

/// Character-level form of the same statement: `chi o kappa` equals the
/// contragredient row for every irreducible.
pub fn kappa_twists_are_contragredients(table: &ModularCharTable) -> bool {
    let ct = table.classes();
    let kappa: Vec<Option<usize>> = ct
        .reps()
        .iter()
        .map(|g| ct.identify(&g.transpose().inverse().expect("invertible")))
        .collect();
    if kappa.iter().any(Option::is_none) {
        return false;
    }
    (0..table.num_irreducibles()).all(|i| {
        let twisted: Vec<u64> = kappa.iter().map(|k| table.value(i, k.unwrap())).collect();
        twisted == table.dual_row(i)
    })
}

/// Values of the regular character.
pub fn regular_character(table: &ModularCharTable) -> Vec<u64> {
    let mut v = vec![0; table.classes().num_classes()];
    v[0] = table.classes().order() % table.p();
    v
}
