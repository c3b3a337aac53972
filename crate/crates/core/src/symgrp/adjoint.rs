use std::collections::VecDeque;

use serde::Serialize;

use super::factorial;
use crate::error::{Error, Result};
use crate::jacquet::{hecke_commutativity, GroupOps, HeckeCheckReport, HeckeWitness, HECKE_BASIS_BOUND};

/// `S_n` on `0..n!`, permutations indexed by lexicographic rank;
/// `(p q)(i) = p(q(i))`.
pub struct PermGroup {
    n: usize,
    perms: Vec<Vec<u8>>,
    inverses: Vec<usize>,
}

impl PermGroup {
    pub fn new(n: usize) -> Self {
        let total = factorial(n) as usize;
        let perms: Vec<Vec<u8>> = (0..total).map(|r| unrank(n, r)).collect();
        let mut g = Self { n, perms, inverses: Vec::new() };
        g.inverses = (0..total)
            .map(|a| {
                let mut inv = vec![0u8; n];
                for (i, &x) in g.perms[a].iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                g.rank(&inv)
            })
            .collect();
        g
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn perm(&self, a: usize) -> &[u8] {
        &self.perms[a]
    }

    pub fn rank(&self, p: &[u8]) -> usize {
        let n = p.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }

    /// The permutation of a cycle written with 1-based points.
    pub fn cycle(&self, points: &[usize]) -> usize {
        let mut p: Vec<u8> = (0..self.n as u8).collect();
        for (i, &a) in points.iter().enumerate() {
            p[a - 1] = (points[(i + 1) % points.len()] - 1) as u8;
        }
        self.rank(&p)
    }

    /// Disjoint-cycle notation with 1-based points; the identity is `()`.
    pub fn cycle_notation(&self, a: usize) -> String {
        let p = &self.perms[a];
        let mut seen = vec![false; self.n];
        let mut out = String::new();
        for s in 0..self.n {
            if seen[s] || p[s] as usize == s {
                continue;
            }
            let mut c = vec![s + 1];
            seen[s] = true;
            let mut x = p[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x + 1);
                x = p[x] as usize;
            }
            let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("({})", body.join(",")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Orbits of conjugation by `S_{n_1} x ... x S_{n_l}`, numbered by
    /// smallest rank.
    pub fn young_conjugation_orbits(&self, composition: &[usize]) -> (Vec<usize>, usize) {
        let mut gens = Vec::new();
        let mut off = 0;
        for &c in composition {
            for j in off..off + c.saturating_sub(1) {
                gens.push(self.cycle(&[j + 1, j + 2]));
            }
            off += c;
        }
        let total = self.perms.len();
        let mut orbit = vec![usize::MAX; total];
        let mut count = 0;
        for start in 0..total {
            if orbit[start] != usize::MAX {
                continue;
            }
            orbit[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(self.mul(s, x), s);
                    if orbit[y] == usize::MAX {
                        orbit[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (orbit, count)
    }
}

fn unrank(n: usize, mut r: usize) -> Vec<u8> {
    let mut avail: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i) as usize;
        out.push(avail.remove(r / f));
        r %= f;
    }
    out
}

impl GroupOps for PermGroup {
    fn order(&self) -> usize {
        self.perms.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (p, q) = (&self.perms[a], &self.perms[b]);
        let c: Vec<u8> = q.iter().map(|&i| p[i as usize]).collect();
        self.rank(&c)
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// An explicit pair of permutations proposed as a non-commuting witness.
#[derive(Clone, Debug, Serialize)]
pub struct NamedWitness {
    /// 1-based cycles.
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    /// The uncorrected form of the second permutation for `l >= 3`, `(n_1+1, n_2+1)`,
    /// which is not a transposition when `n_1 = n_2`.
    pub sigma2_literal: Option<Vec<usize>>,
    pub literal_noncommuting: Option<bool>,
    pub noncommuting: bool,
    pub witness: HeckeWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointHeckeReport {
    pub composition: Vec<usize>,
    pub basis_size: usize,
    pub commutative: bool,
    /// Full pairwise check; skipped above the basis bound.
    pub full: Option<HeckeCheckReport>,
    /// Smallest-rank representatives of the full check's witness pair.
    pub full_witness_cycles: Option<(String, String)>,
    pub named: Option<NamedWitness>,
}

fn class_product(g: &PermGroup, orbit: &[usize], nbasis: usize, alpha: usize, beta: usize) -> (Vec<u64>, Vec<u64>) {
    let members = |c: usize| (0..orbit.len()).filter(|&x| orbit[x] == c).collect::<Vec<_>>();
    let (xs, ys) = (members(alpha), members(beta));
    let mut reps = vec![usize::MAX; nbasis];
    for (x, &b) in orbit.iter().enumerate().rev() {
        reps[b] = x;
    }
    let mut left = vec![0u64; orbit.len()];
    let mut right = vec![0u64; orbit.len()];
    for &x in &xs {
        for &y in &ys {
            left[g.mul(x, y)] += 1;
            right[g.mul(y, x)] += 1;
        }
    }
    (reps.iter().map(|&z| left[z]).collect(), reps.iter().map(|&z| right[z]).collect())
}

/// `(sigma1, sigma2, literal sigma2)` as 1-based cycles.
type CyclePair = (Vec<usize>, Vec<usize>, Option<Vec<usize>>);

fn named_pair(composition: &[usize]) -> Option<CyclePair> {
    let l = composition.len();
    if l >= 3 {
        let (n1, n2) = (composition[0], composition[1]);
        let literal = if n1 != n2 { Some(vec![n1 + 1, n2 + 1]) } else { None };
        Some((vec![1, n1 + 1], vec![n1 + 1, n1 + n2 + 1], literal))
    } else if l == 2 && composition[0] >= 3 && composition[1] >= 3 {
        let n1 = composition[0];
        Some((vec![1, 2, 3, n1 + 1, n1 + 2, n1 + 3], vec![1, n1 + 1, n1 + 2], None))
    } else {
        None
    }
}

/// Commutativity of the `S_{n_1} x ... x S_{n_l}`-conjugation-invariant
/// functions on `S_n` under convolution.
///
/// The full check runs when the basis has at most [`HECKE_BASIS_BOUND`]
/// elements; the named witness pair is evaluated whenever it is defined.
/// For two blocks of size at least 3 the named pair may itself commute
/// (it does for `(3, 3)`), so only the full check decides there.
pub fn adjoint_hecke_commute(composition: &[usize]) -> Result<AdjointHeckeReport> {
    let n: usize = composition.iter().sum();
    if n > 8 {
        return Err(Error::SizeBoundExceeded(format!("S_{n} exceeds the convolution bound")));
    }
    let g = PermGroup::new(n);
    let (orbit, nbasis) = g.young_conjugation_orbits(composition);
    let named = named_pair(composition).map(|(s1, s2, lit)| {
        let (a, b) = (orbit[g.cycle(&s1)], orbit[g.cycle(&s2)]);
        let (left, right) = class_product(&g, &orbit, nbasis, a, b);
        let literal_noncommuting = lit.as_ref().map(|c| {
            let (l2, r2) = class_product(&g, &orbit, nbasis, a, orbit[g.cycle(c)]);
            l2 != r2
        });
        NamedWitness {
            sigma1: s1,
            sigma2: s2,
            sigma2_literal: lit,
            literal_noncommuting,
            noncommuting: left != right,
            witness: HeckeWitness { alpha: a, beta: b, left, right },
        }
    });
    let full = if nbasis <= HECKE_BASIS_BOUND { Some(hecke_commutativity(&g, &orbit, nbasis, 1)?) } else { None };
    let commutative = match (&full, &named) {
        (Some(f), _) => f.commutative,
        (None, Some(w)) if w.noncommuting => false,
        _ => return Err(Error::BasisBoundExceeded { size: nbasis, bound: HECKE_BASIS_BOUND }),
    };
    let full_witness_cycles = full.as_ref().and_then(|f| f.witness.as_ref()).map(|w| {
        let rep = |c: usize| orbit.iter().position(|&o| o == c).expect("nonempty orbit");
        (g.cycle_notation(rep(w.alpha)), g.cycle_notation(rep(w.beta)))
    });
    Ok(AdjointHeckeReport {
        composition: composition.to_vec(),
        basis_size: nbasis,
        commutative,
        full,
        full_witness_cycles,
        named,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_roundtrip() {
        let g = PermGroup::new(5);
        for a in 0..120 {
            assert_eq!(g.rank(g.perm(a)), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert_eq!(g.perm(g.cycle(&[1, 2, 3])), &[1, 2, 0, 3, 4]);
    }

    #[test]
    fn s3_trivial_levi() {
        let r = adjoint_hecke_commute(&[1, 1, 1]).unwrap();
        assert!(!r.commutative);
        let g = PermGroup::new(3);
        let w = r.full.unwrap().witness.unwrap();
        let pair = [w.alpha, w.beta];
        assert!(pair.contains(&g.cycle(&[1, 2])) && pair.contains(&g.cycle(&[2, 3])));
        let named = r.named.unwrap();
        assert!(named.noncommuting && named.sigma2_literal.is_none());
    }

    #[test]
    fn s3_with_s2() {
        assert!(adjoint_hecke_commute(&[2, 1]).unwrap().commutative);
    }

    /// Conjugation orbit under `S_a x S_b` and the multisets of products,
    /// on raw permutation vectors.
    fn oracle_commutes(a: usize, x: &[u8], y: &[u8]) -> bool {
        use std::collections::{BTreeMap, BTreeSet};
        let n = x.len();
        let compose = |p: &[u8], q: &[u8]| q.iter().map(|&i| p[i as usize]).collect::<Vec<u8>>();
        let young: Vec<Vec<u8>> = unrank_all(n)
            .into_iter()
            .filter(|s| s[..a].iter().all(|&v| (v as usize) < a))
            .collect();
        let orbit = |p: &[u8]| -> BTreeSet<Vec<u8>> {
            young
                .iter()
                .map(|s| {
                    let mut inv = vec![0u8; n];
                    for (i, &v) in s.iter().enumerate() {
                        inv[v as usize] = i as u8;
                    }
                    compose(&compose(s, p), &inv)
                })
                .collect()
        };
        let (xs, ys) = (orbit(x), orbit(y));
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for u in &xs {
            for v in &ys {
                *left.entry(compose(u, v)).or_insert(0) += 1;
                *right.entry(compose(v, u)).or_insert(0) += 1;
            }
        }
        left == right
    }

    fn unrank_all(n: usize) -> Vec<Vec<u8>> {
        (0..factorial(n) as usize).map(|r| unrank(n, r)).collect()
    }

    #[test]
    fn three_three_noncommutative_but_named_pair_commutes() {
        let r = adjoint_hecke_commute(&[3, 3]).unwrap();
        assert!(!r.commutative);
        assert_eq!(r.basis_size, 38);
        let w = r.named.unwrap();
        assert!(!w.noncommuting);
        assert_eq!(w.witness.left, w.witness.right);

        let g = PermGroup::new(6);
        let s1 = g.perm(g.cycle(&[1, 2, 3, 4, 5, 6])).to_vec();
        let s2 = g.perm(g.cycle(&[1, 4, 5])).to_vec();
        assert!(oracle_commutes(3, &s1, &s2));

        let (c1, c2) = r.full_witness_cycles.unwrap();
        let parse = |s: &str| {
            let mut p: Vec<u8> = (0..6).collect();
            for cyc in s.trim_matches(|c| c == '(' || c == ')').split(")(") {
                let pts: Vec<usize> = cyc.split(',').map(|t| t.parse().unwrap()).collect();
                for i in 0..pts.len() {
                    p[pts[i] - 1] = (pts[(i + 1) % pts.len()] - 1) as u8;
                }
            }
            p
        };
        assert!(!oracle_commutes(3, &parse(&c1), &parse(&c2)));
    }

    #[test]
    fn cycle_notation_roundtrip() {
        let g = PermGroup::new(5);
        assert_eq!(g.cycle_notation(0), "()");
        assert_eq!(g.cycle_notation(g.cycle(&[2, 4, 5])), "(2,4,5)");
    }
}
