//! Exact arithmetic over small finite fields: matrices, polynomials,
//! subspaces and the invariant factors that classify `GL_n(F_q)` classes.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod snf;
pub mod subspace;

pub use field::{field, Field, FieldDesc, SUPPORTED_Q};
pub use matrix::{combine, f2_rank, MatFq};
pub use poly::PolyFq;
pub use snf::{char_poly, invariant_factors, min_poly, monic_irreducibles, poly_factor};
pub use subspace::Subspace;

/// Rank by row reduction.
pub fn mat_rank(m: &MatFq) -> usize {
    m.rank()
}

/// Basis of `{g : gA = A^t g, gB = B^t g}` for square `A`, `B` of equal size.
///
/// The conditions are `2N^2` homogeneous linear equations in the `N^2`
/// entries of `g`; the basis returned is the RREF kernel basis, so it is
/// deterministic.
pub fn solve_intertwiner_space(a: &MatFq, b: &MatFq) -> Vec<MatFq> {
    assert!(a.is_square() && b.is_square() && a.rows() == b.rows(), "A, B must be square of equal size");
    let f = a.field();
    let n = a.rows();
    let unknowns = n * n;
    if f.q() == 2 && unknowns <= 64 {
        return f2_intertwiners(a, b);
    }
    let mut sys = MatFq::zeros(f, 2 * unknowns, unknowns);
    for (blk, m) in [a, b].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = blk * unknowns + i * n + j;
                // (g M)[i][j] = sum_k g[i][k] M[k][j]
                for k in 0..n {
                    let idx = i * n + k;
                    sys.set(row, idx, f.add(sys.get(row, idx), m.get(k, j)));
                }
                // (M^t g)[i][j] = sum_k M[k][i] g[k][j]
                for k in 0..n {
                    let idx = k * n + j;
                    sys.set(row, idx, f.sub(sys.get(row, idx), m.get(k, i)));
                }
            }
        }
    }
    let ns = sys.nullspace();
    (0..ns.rows())
        .map(|r| MatFq::from_vec(f, n, n, ns.row(r).to_vec()))
        .collect()
}

/// Basis of the commutant `{g : gA = Ag}` (RREF kernel basis).
pub fn commutant_space(a: &MatFq) -> Vec<MatFq> {
    assert!(a.is_square());
    let f = a.field();
    let n = a.rows();
    let unknowns = n * n;
    let mut sys = MatFq::zeros(f, unknowns, unknowns);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let idx = i * n + k;
                sys.set(row, idx, f.add(sys.get(row, idx), a.get(k, j)));
                let idx = k * n + j;
                sys.set(row, idx, f.sub(sys.get(row, idx), a.get(i, k)));
            }
        }
    }
    let ns = sys.nullspace();
    (0..ns.rows()).map(|r| MatFq::from_vec(f, n, n, ns.row(r).to_vec())).collect()
}

fn f2_intertwiners(a: &MatFq, b: &MatFq) -> Vec<MatFq> {
    let f = a.field();
    let n = a.rows();
    let mut rows: Vec<u64> = Vec::with_capacity(2 * n * n);
    for m in [a, b] {
        for i in 0..n {
            for j in 0..n {
                let mut w = 0u64;
                for k in 0..n {
                    if m.get(k, j) == 1 {
                        w ^= 1 << (i * n + k);
                    }
                    if m.get(k, i) == 1 {
                        w ^= 1 << (k * n + j);
                    }
                }
                if w != 0 {
                    rows.push(w);
                }
            }
        }
    }
    f2_nullspace(rows, n * n)
        .into_iter()
        .map(|w| {
            let data = (0..n * n).map(|c| ((w >> c) & 1) as u8).collect();
            MatFq::from_vec(f, n, n, data)
        })
        .collect()
}

/// Kernel basis of a bit-packed `F_2` system, one `u64` per equation; the
/// basis matches [`MatFq::nullspace`] on the same system.
pub fn f2_nullspace(mut rows: Vec<u64>, ncols: usize) -> Vec<u64> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let bit = 1u64 << c;
        let Some(pr) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let pivot = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = 1u64 << fc;
            for (pr, &pc) in pivots.iter().enumerate() {
                if rows[pr] >> fc & 1 == 1 {
                    v |= 1 << pc;
                }
            }
            v
        })
        .collect()
}
