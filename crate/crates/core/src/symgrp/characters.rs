use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{factorial, partitions, Partition};

/// Beta-set of `lambda` with `len` beads: `lambda_i + len - 1 - i`.
fn beta_set(lambda: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|i| lambda.get(i).copied().unwrap_or(0) + len - 1 - i).collect()
}

fn from_beta(mut beta: Vec<usize>) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    beta.iter().enumerate().map(|(i, &b)| b + i + 1 - len).filter(|&p| p > 0).collect()
}

type Memo = Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo().lock().unwrap().get(&key) {
        return v;
    }
    // strip a rim hook of length mu[0]: move one bead down by r
    let r = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    let beta = beta_set(lambda, len);
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&from_beta(nb), rest);
    }
    memo().lock().unwrap().insert(key, total);
    total
}

/// `chi^lambda` at cycle type `mu` by the Murnaghan-Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.n(), mu.n(), "partitions of different sizes");
    mn(lambda.parts(), mu.parts())
}

/// `n! / prod hook lengths`.
pub fn hook_length_degree(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            hooks *= (row - j - 1 + conj.parts()[j] - i - 1 + 1) as u128;
        }
    }
    factorial(lambda.n()) / hooks
}

/// Integer character table of `S_n`; rows and columns both indexed by
/// [`partitions`] order.
#[derive(Clone, Debug)]
pub struct SnCharTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    /// `values[lambda][mu]`.
    pub values: Vec<Vec<i64>>,
}

impl SnCharTable {
    pub fn new(n: usize) -> Self {
        let parts = partitions(n);
        let values = parts.iter().map(|l| parts.iter().map(|m| mn_character(l, m)).collect()).collect();
        Self { n, partitions: parts, values }
    }

    pub fn index(&self, p: &Partition) -> usize {
        self.partitions.iter().position(|x| x == p).expect("partition of n")
    }

    /// `sum_mu chi(mu) psi(mu) / z_mu` as an exact rational check against
    /// the identity matrix.
    pub fn rows_orthonormal(&self) -> bool {
        let zs: Vec<u128> = self.partitions.iter().map(Partition::z).collect();
        let nf = factorial(self.n) as i128;
        (0..self.values.len()).all(|a| {
            (0..self.values.len()).all(|b| {
                let s: i128 = (0..zs.len())
                    .map(|m| self.values[a][m] as i128 * self.values[b][m] as i128 * (nf / zs[m] as i128))
                    .sum();
                s == if a == b { nf } else { 0 }
            })
        })
    }
}
