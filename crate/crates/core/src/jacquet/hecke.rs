use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Largest invariant-function algebra the commutativity check accepts.
pub const HECKE_BASIS_BOUND: usize = 500;

/// A finite group on the index set `0..order`.
pub trait GroupOps: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
}

/// [`GroupOps`] for an enumerated matrix group.
pub struct MatrixGroupOps<'a> {
    group: &'a FiniteGroup,
    inverses: Vec<usize>,
}

impl<'a> MatrixGroupOps<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        let inverses = group
            .elements()
            .par_iter()
            .map(|g| group.index_of(&g.inverse().expect("group element")).expect("closed under inverse"))
            .collect();
        Self { group, inverses }
    }
}

impl GroupOps for MatrixGroupOps<'_> {
    fn order(&self) -> usize {
        self.inverses.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.group.index_of(&self.group.element(a).mul(self.group.element(b))).expect("closed under products")
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Two basis elements whose convolutions in either order differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeWitness {
    pub alpha: usize,
    pub beta: usize,
    /// `(e_alpha * e_beta)` evaluated at the representative of every basis element.
    pub left: Vec<u64>,
    /// `(e_beta * e_alpha)` at the same points.
    pub right: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeCheckReport {
    pub commutative: bool,
    pub basis_size: usize,
    pub witness: Option<HeckeWitness>,
}

/// Commutativity of the convolution algebra spanned by the indicators of the
/// blocks of `basis_of` (a partition of the group into `nbasis` parts that
/// must be a union of double cosets or twisted classes).
///
/// `(e_a * e_b)(z) = weight * #{x in a : x^{-1} z in b}`; `weight` rescales
/// counts taken in a quotient model. The witness is the lexicographically
/// first non-commuting pair.
pub fn hecke_commutativity<G: GroupOps>(group: &G, basis_of: &[usize], nbasis: usize, weight: u64) -> Result<HeckeCheckReport> {
    if nbasis > HECKE_BASIS_BOUND {
        return Err(Error::BasisBoundExceeded { size: nbasis, bound: HECKE_BASIS_BOUND });
    }
    assert_eq!(basis_of.len(), group.order());
    let mut reps = vec![usize::MAX; nbasis];
    for (x, &b) in basis_of.iter().enumerate().rev() {
        reps[b] = x;
    }
    let inverses: Vec<usize> = (0..group.order()).map(|a| group.inv(a)).collect();
    let first_bad = (0..nbasis)
        .into_par_iter()
        .filter_map(|gamma| {
            let z = reps[gamma];
            let mut c = vec![0u32; nbasis * nbasis];
            for (a, &ia) in inverses.iter().enumerate() {
                c[basis_of[a] * nbasis + basis_of[group.mul(ia, z)]] += 1;
            }
            (0..nbasis)
                .flat_map(|al| (al + 1..nbasis).map(move |be| (al, be)))
                .find(|&(al, be)| c[al * nbasis + be] != c[be * nbasis + al])
        })
        .min();
    let witness = first_bad.map(|(alpha, beta)| {
        let conv = |x: usize, y: usize| -> Vec<u64> {
            reps.iter()
                .map(|&z| {
                    let n = (0..group.order())
                        .filter(|&a| basis_of[a] == x && basis_of[group.mul(inverses[a], z)] == y)
                        .count() as u64;
                    n * weight
                })
                .collect()
        };
        HeckeWitness { alpha, beta, left: conv(alpha, beta), right: conv(beta, alpha) }
    });
    Ok(HeckeCheckReport { commutative: witness.is_none(), basis_size: nbasis, witness })
}
