use serde::Serialize;

use super::characters::mn_character;
use super::{factorial, partitions, Partition};

/// Every tuple taking one element from each list, first list slowest.
fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, l| {
        acc.into_iter()
            .flat_map(|t| l.iter().map(move |x| { let mut t = t.clone(); t.push(x.clone()); t }))
            .collect()
    })
}

fn union(parts: &[Partition]) -> Partition {
    Partition::new(parts.iter().flat_map(|p| p.parts().iter().copied()).collect())
}

/// `<Res chi^lambda, chi^{mu_1} ⊠ ... ⊠ chi^{mu_l}>` over the Young subgroup
/// `S_{|mu_1|} x ... x S_{|mu_l|}`, summed exactly over its classes.
pub fn young_restriction_mult(lambda: &Partition, mus: &[Partition]) -> u64 {
    assert_eq!(lambda.n(), mus.iter().map(Partition::n).sum::<usize>(), "sizes must add up");
    let class_lists: Vec<Vec<Partition>> = mus.iter().map(|m| partitions(m.n())).collect();
    let order: i128 = mus.iter().map(|m| factorial(m.n()) as i128).product();
    let total: i128 = product(&class_lists)
        .into_iter()
        .map(|rho| {
            let size: i128 = rho.iter().map(|r| r.class_size() as i128).product();
            let factor: i128 = mus.iter().zip(&rho).map(|(m, r)| mn_character(m, r) as i128).product();
            size * factor * mn_character(lambda, &union(&rho)) as i128
        })
        .sum();
    assert!(total >= 0 && total % order == 0, "inner product is a nonnegative integer");
    (total / order) as u64
}

fn contained(mu: &[usize], lambda: &[usize]) -> bool {
    mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(a, b)| a <= b)
}

/// `c^lambda_{mu nu}` by counting Littlewood-Richardson tableaux of shape
/// `lambda / mu` and content `nu`: semistandard fillings whose reverse
/// reading word (rows top to bottom, each right to left) is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let (l, m, c) = (lambda.parts(), mu.parts(), nu.parts());
    if lambda.n() != mu.n() + nu.n() || !contained(m, l) {
        return 0;
    }
    let rows = l.len();
    let start: Vec<usize> = (0..rows).map(|r| m.get(r).copied().unwrap_or(0)).collect();
    let mut filling: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; l[r]]).collect();
    let mut counts = vec![0usize; c.len()];
    fn rec(
        r: usize,
        l: &[usize],
        start: &[usize],
        c: &[usize],
        filling: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        if r == l.len() {
            return u64::from(counts.as_slice() == c);
        }
        // fill row r right to left so the lattice condition is checked in reading order
        fn fill_row(
            r: usize,
            col: usize,
            l: &[usize],
            start: &[usize],
            c: &[usize],
            filling: &mut Vec<Vec<usize>>,
            counts: &mut Vec<usize>,
        ) -> u64 {
            if col < start[r] || col == usize::MAX {
                return rec(r + 1, l, start, c, filling, counts);
            }
            let right = if col + 1 < l[r] { filling[r][col + 1] } else { usize::MAX };
            let above = if r > 0 && col >= start[r - 1] && col < l[r - 1] { Some(filling[r - 1][col]) } else { None };
            let mut total = 0;
            for v in 0..c.len() {
                if v > right || above.is_some_and(|a| v <= a) || counts[v] == c[v] {
                    continue;
                }
                if v > 0 && counts[v] + 1 > counts[v - 1] {
                    continue;
                }
                counts[v] += 1;
                filling[r][col] = v;
                total += fill_row(r, col.wrapping_sub(1), l, start, c, filling, counts);
                counts[v] -= 1;
            }
            total
        }
        if l[r] == start[r] {
            return rec(r + 1, l, start, c, filling, counts);
        }
        fill_row(r, l[r] - 1, l, start, c, filling, counts)
    }
    rec(0, l, &start, c, &mut filling, &mut counts)
}

/// Multiplicity of `mu_1 ⊠ ... ⊠ mu_l` in `Res lambda` through iterated
/// Littlewood-Richardson coefficients.
pub fn iterated_lr(lambda: &Partition, mus: &[Partition]) -> u64 {
    match mus {
        [] => u64::from(lambda.n() == 0),
        [only] => u64::from(only == lambda),
        [init @ .., last] => partitions(lambda.n() - last.n())
            .iter()
            .filter(|k| contained(k.parts(), lambda.parts()))
            .map(|k| {
                let c = lr_coefficient(lambda, k, last);
                if c == 0 {
                    0
                } else {
                    c * iterated_lr(k, init)
                }
            })
            .sum(),
    }
}

/// `l <= 2` and `min(n_1, n_2) <= 2`.
pub fn strong_gelfand_predicate(composition: &[usize]) -> bool {
    match composition {
        [] | [_] => true,
        [a, b] => (*a).min(*b) <= 2,
        _ => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongGelfandReport {
    pub composition: Vec<usize>,
    pub max_multiplicity: u64,
    /// First `(lambda, mu_1, ..., mu_l)` attaining the maximum.
    pub argmax: (Partition, Vec<Partition>),
    pub pass: bool,
}

/// Largest restriction multiplicity from `S_n` to the Young subgroup.
pub fn strong_gelfand_check(composition: &[usize]) -> StrongGelfandReport {
    let n = composition.iter().sum();
    let targets = product(&composition.iter().map(|&c| partitions(c)).collect::<Vec<_>>());
    let mut best: Option<(u64, Partition, Vec<Partition>)> = None;
    for lambda in partitions(n) {
        for mus in &targets {
            let m = young_restriction_mult(&lambda, mus);
            if best.as_ref().is_none_or(|b| m > b.0) {
                best = Some((m, lambda.clone(), mus.clone()));
            }
        }
    }
    let (max_multiplicity, l, mus) = best.expect("at least one irreducible");
    StrongGelfandReport { composition: composition.to_vec(), max_multiplicity, argmax: (l, mus), pass: max_multiplicity <= 1 }
}
