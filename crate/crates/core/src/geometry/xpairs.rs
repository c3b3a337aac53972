use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffalg::{combine, field, solve_intertwiner_space, MatFq};
use crate::groups::enumerate_group;
use crate::groups::GroupSpec;

/// Largest `N = n + k` accepted by [`enumerate_x`] for each field.
pub fn x_size_bound(q: u32) -> usize {
    match q {
        2 => 4,
        3 => 3,
        _ => 2,
    }
}

/// `(A, B)` with `AB = BA = 0`, `rank A = n`, `rank B = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct XPair {
    pub a: MatFq,
    pub b: MatFq,
    pub n: usize,
    pub k: usize,
}

impl XPair {
    pub fn new(a: MatFq, b: MatFq) -> Result<Self> {
        let (n, k) = (a.rank(), b.rank());
        if !a.is_square() || a.rows() != b.rows() || a.rows() != n + k {
            return Err(Error::InvalidArgument("ranks must add up to the size".into()));
        }
        if !a.mul(&b).is_zero() || !b.mul(&a).is_zero() {
            return Err(Error::InvalidArgument("AB and BA must vanish".into()));
        }
        Ok(Self { a, b, n, k })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.a.is_nilpotent()
    }

    /// `theta(A, B) = (A^t, B^t)`.
    pub fn theta(&self) -> XPair {
        XPair { a: self.a.transpose(), b: self.b.transpose(), n: self.n, k: self.k }
    }

    /// `(B, A)` in `X_{k,n}`.
    pub fn swapped(&self) -> XPair {
        XPair { a: self.b.clone(), b: self.a.clone(), n: self.k, k: self.n }
    }
}

/// Columns spanning `Ker A` (`N x k`).
fn kernel_columns(a: &MatFq) -> MatFq {
    a.nullspace().transpose()
}

/// Rows spanning the left kernel of `A` (`k x N`); `v -> Q v` identifies
/// `Coker A` with `F^k`.
fn cokernel_projection(a: &MatFq) -> MatFq {
    a.transpose().nullspace()
}

/// Every pair of `X_{n,k}(F_q)` exactly once: `A` of rank `n` in
/// lexicographic order, then `B = K phi Q` for `phi` in `GL_k(F_q)` in
/// lexicographic order, where `K` spans `Ker A` and `Q` projects onto
/// `Coker A`.
pub fn enumerate_x(q: u32, n: usize, k: usize) -> Result<Vec<XPair>> {
    let size = n + k;
    if size > x_size_bound(q) {
        return Err(Error::SizeBoundExceeded(format!("X_{{{n},{k}}} over F_{q} exceeds N = {}", x_size_bound(q))));
    }
    let f = field(q)?;
    let phis = if k == 0 { vec![MatFq::identity(f, 0)] } else { enumerate_group(&GroupSpec::gl(k, q), u64::MAX)? };
    let a_list: Vec<MatFq> = MatFq::all(f, size, size).filter(|a| a.rank() == n).collect();
    Ok(a_list
        .par_iter()
        .flat_map_iter(|a| {
            let kk = kernel_columns(a);
            let qq = cokernel_projection(a);
            phis.iter()
                .map(move |phi| {
                    let b = if k == 0 { MatFq::zeros(f, size, size) } else { kk.mul(phi).mul(&qq) };
                    XPair { a: a.clone(), b, n, k }
                })
                .collect::<Vec<_>>()
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    Witnessed,
    RefutedByExhaustion,
}

/// Either `g` with `g A g^{-1} = A^t`, `g B g^{-1} = B^t`, or the statement
/// that no invertible intertwiner exists.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitCertificate {
    pub pair: XPair,
    pub witness: Option<MatFq>,
    pub status: CertificateStatus,
}

impl OrbitCertificate {
    /// Re-verifies the witness.
    pub fn new(pair: XPair, witness: Option<MatFq>) -> Result<Self> {
        let status = match &witness {
            Some(g) => {
                let ok = g.is_invertible()
                    && g.mul(&pair.a) == pair.a.transpose().mul(g)
                    && g.mul(&pair.b) == pair.b.transpose().mul(g);
                if !ok {
                    return Err(Error::InvalidArgument("witness does not conjugate the pair to its transpose".into()));
                }
                CertificateStatus::Witnessed
            }
            None => CertificateStatus::RefutedByExhaustion,
        };
        Ok(Self { pair, witness, status })
    }

    pub fn is_witnessed(&self) -> bool {
        self.status == CertificateStatus::Witnessed
    }
}

/// First invertible element of the intertwiner space in lexicographic order
/// of coefficient vectors on its RREF basis; the sweep is exhaustive.
pub fn theta_orbit_witness(pair: &XPair) -> OrbitCertificate {
    let basis = solve_intertwiner_space(&pair.a, &pair.b);
    let f = pair.a.field();
    let witness = if basis.is_empty() {
        None
    } else {
        MatFq::all(f, 1, basis.len()).map(|c| combine(&basis, c.entries())).find(|g| g.is_invertible())
    };
    OrbitCertificate::new(pair.clone(), witness).expect("intertwiner solves the conjugation equations")
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricReport {
    pub q: u32,
    pub size: usize,
    /// `(n, k, pairs, nilpotent-A pairs)` for every split `n + k = size`.
    pub counts: Vec<(usize, usize, usize, usize)>,
    pub witnessed: usize,
    pub nilpotent_witnessed: usize,
    pub refutations: Vec<XPair>,
    pub pass: bool,
}

/// Every pair in `X_{n,k}`, `n + k = size`, has a theta-witness.
pub fn verify_geometric_statement(q: u32, size: usize) -> Result<GeometricReport> {
    let mut counts = Vec::new();
    let (mut witnessed, mut nilpotent_witnessed) = (0, 0);
    let mut refutations = Vec::new();
    for n in 0..=size {
        let pairs = enumerate_x(q, n, size - n)?;
        let certs: Vec<(bool, bool, XPair)> = pairs
            .into_par_iter()
            .map(|p| {
                let c = theta_orbit_witness(&p);
                (c.is_witnessed(), p.is_nilpotent(), p)
            })
            .collect();
        let nil = certs.iter().filter(|c| c.1).count();
        counts.push((n, size - n, certs.len(), nil));
        for (ok, is_nil, p) in certs {
            if ok {
                witnessed += 1;
                nilpotent_witnessed += usize::from(is_nil);
            } else {
                refutations.push(p);
            }
        }
    }
    let pass = refutations.is_empty();
    Ok(GeometricReport { q, size, counts, witnessed, nilpotent_witnessed, refutations, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x11_over_f2_has_nine_pairs() {
        let xs = enumerate_x(2, 1, 1).unwrap();
        assert_eq!(xs.len(), 9);
        for p in &xs {
            XPair::new(p.a.clone(), p.b.clone()).unwrap();
        }
    }

    #[test]
    fn role_swap_preserves_counts() {
        for (q, n, k) in [(2, 1, 2), (2, 1, 3), (3, 1, 2)] {
            let xs = enumerate_x(q, n, k).unwrap();
            let ys: std::collections::HashSet<XPair> = enumerate_x(q, k, n).unwrap().into_iter().collect();
            assert_eq!(xs.len(), ys.len());
            assert!(xs.iter().all(|p| ys.contains(&p.swapped())));
        }
    }

    #[test]
    fn pairs_are_distinct() {
        let xs = enumerate_x(2, 2, 2).unwrap();
        let set: std::collections::HashSet<&XPair> = xs.iter().collect();
        assert_eq!(set.len(), xs.len());
    }

    #[test]
    fn symmetric_pair_has_identity_witness() {
        let f = field(2).unwrap();
        let a = MatFq::from_rows(f, &[vec![1, 0], vec![0, 0]]);
        let b = MatFq::from_rows(f, &[vec![0, 0], vec![0, 1]]);
        let c = theta_orbit_witness(&XPair::new(a, b).unwrap());
        assert!(c.is_witnessed());
        assert!(c.witness.unwrap().is_invertible());
    }

    #[test]
    fn elementary_pair_is_witnessed() {
        let f = field(2).unwrap();
        let a = MatFq::from_rows(f, &[vec![0, 1], vec![0, 0]]);
        let b = MatFq::from_rows(f, &[vec![0, 1], vec![0, 0]]);
        // Ker A = Im A = span(e1): the forced complement B = E_12
        let p = XPair::new(a, b).unwrap();
        assert!(theta_orbit_witness(&p).is_witnessed());
    }

    #[test]
    fn witnesses_are_involution_consistent() {
        for p in enumerate_x(2, 1, 2).unwrap() {
            let g = theta_orbit_witness(&p).witness.unwrap();
            let gt = g.inverse().unwrap().transpose();
            let c = OrbitCertificate::new(p.theta(), Some(gt));
            assert!(c.is_ok());
            assert!(theta_orbit_witness(&p.theta()).is_witnessed());
        }
    }

    #[test]
    fn small_geometric_statements() {
        let r = verify_geometric_statement(2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.counts.iter().find(|c| c.0 == 1).unwrap().2, 9);
        assert!(verify_geometric_statement(3, 2).unwrap().pass);
    }

    #[test]
    fn size_bound() {
        assert!(matches!(enumerate_x(2, 3, 2), Err(Error::SizeBoundExceeded(_))));
    }
}
