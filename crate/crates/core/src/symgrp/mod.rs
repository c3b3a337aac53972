//! Symmetric groups: Murnaghan-Nakayama characters, restriction to Young
//! subgroups, and the convolution algebra of `S_{n_1} x ... x S_{n_l}`
//! conjugation-invariant functions on `S_n`.

mod adjoint;
mod characters;
mod restriction;

use serde::{Deserialize, Serialize};

pub use adjoint::{adjoint_hecke_commute, AdjointHeckeReport, NamedWitness, PermGroup};
pub use characters::{hook_length_degree, mn_character, SnCharTable};
pub use restriction::{
    iterated_lr, lr_coefficient, strong_gelfand_check, strong_gelfand_predicate, young_restriction_mult,
    StrongGelfandReport,
};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the centralizer order of the cycle type.
    pub fn z(&self) -> u128 {
        let mut out: u128 = 1;
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let m = self.0[i..].iter().take_while(|&&p| p == part).count();
            for j in 1..=m {
                out *= part as u128 * j as u128;
            }
            i += m;
        }
        out
    }

    /// Size of the conjugacy class of this cycle type in `S_n`.
    pub fn class_size(&self) -> u128 {
        factorial(self.n()) / self.z()
    }

    /// `(-1)^{n - len}`.
    pub fn sign(&self) -> i64 {
        if (self.n() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
