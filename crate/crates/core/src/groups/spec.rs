use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::ffalg::{field, Field, MatFq};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ORDER_BOUND: u64 = 300_000;

/// A concrete finite group of matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `GL_n(F_q)`.
    GL { n: usize, q: u32 },
    /// `GL_{n_1} x ... x GL_{n_l}` embedded block-diagonally in `GL_N`.
    Levi { q: u32, composition: Vec<usize> },
    /// `S_n` as permutation matrices over `F_2`.
    Symmetric { n: usize },
    /// Subgroup of `GL_degree(F_q)` generated by explicit matrices.
    Explicit { name: String, q: u32, degree: usize, generators: Vec<MatFq> },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::GL { n, q } => write!(f, "GL({n},{q})"),
            GroupSpec::Levi { q, composition } => {
                let parts: Vec<String> = composition.iter().map(|c| c.to_string()).collect();
                write!(f, "Levi({q};{})", parts.join(","))
            }
            GroupSpec::Symmetric { n } => write!(f, "S({n})"),
            GroupSpec::Explicit { name, q, degree, .. } => write!(f, "Explicit({name};{degree},{q})"),
        }
    }
}

pub fn gl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl GroupSpec {
    pub fn gl(n: usize, q: u32) -> Self {
        GroupSpec::GL { n, q }
    }

    pub fn levi(q: u32, composition: &[usize]) -> Self {
        GroupSpec::Levi { q, composition: composition.to_vec() }
    }

    pub fn field(&self) -> Result<Field> {
        match self {
            GroupSpec::GL { q, .. } | GroupSpec::Levi { q, .. } | GroupSpec::Explicit { q, .. } => field(*q),
            GroupSpec::Symmetric { .. } => field(2),
        }
    }

    /// Size of the matrices.
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::GL { n, .. } => *n,
            GroupSpec::Levi { composition, .. } => composition.iter().sum(),
            GroupSpec::Symmetric { n } => *n,
            GroupSpec::Explicit { degree, .. } => *degree,
        }
    }

    /// Order from the closed formula; `None` for explicit subgroups.
    pub fn predicted_order(&self) -> Option<u128> {
        match self {
            GroupSpec::GL { n, q } => Some(gl_order(*n, *q)),
            GroupSpec::Levi { q, composition } => Some(composition.iter().map(|&c| gl_order(c, *q)).product()),
            GroupSpec::Symmetric { n } => Some(factorial(*n)),
            GroupSpec::Explicit { .. } => None,
        }
    }

    pub fn check_bound(&self, bound: u64) -> Result<()> {
        match self.predicted_order() {
            Some(order) if order > bound as u128 => Err(Error::OrderBoundExceeded { order, bound }),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, g: &MatFq) -> bool {
        let n = self.degree();
        if g.rows() != n || g.cols() != n {
            return false;
        }
        match self {
            GroupSpec::GL { .. } => g.is_invertible(),
            GroupSpec::Levi { composition, .. } => {
                let mut off = 0;
                for &c in composition {
                    for r in off..off + c {
                        for col in 0..n {
                            if (col < off || col >= off + c) && g.get(r, col) != 0 {
                                return false;
                            }
                        }
                    }
                    off += c;
                }
                g.is_invertible()
            }
            GroupSpec::Symmetric { .. } => permutation_of(g).is_some(),
            GroupSpec::Explicit { .. } => enumerate_group(self, DEFAULT_ORDER_BOUND)
                .map(|els| els.contains(g))
                .unwrap_or(false),
        }
    }
}

/// All elements, each once. GL and Levi groups come out in lexicographic
/// order of entry vectors; `S_n` in lexicographic order of permutations;
/// explicit subgroups in BFS order from the identity.
pub fn enumerate_group(spec: &GroupSpec, bound: u64) -> Result<Vec<MatFq>> {
    spec.check_bound(bound)?;
    let f = spec.field()?;
    let els = match spec {
        GroupSpec::GL { n, .. } => {
            let n = *n;
            if f.q() == 2 && n * n <= 64 {
                MatFq::all(f, n, n)
                    .filter(|m| crate::ffalg::f2_rank(&mut m.to_f2_rows().unwrap()) == n)
                    .collect()
            } else {
                MatFq::all(f, n, n).filter(|m| m.is_invertible()).collect()
            }
        }
        GroupSpec::Levi { q, composition } => {
            let factors: Vec<Vec<MatFq>> = composition
                .iter()
                .map(|&c| enumerate_group(&GroupSpec::gl(c, *q), bound))
                .collect::<Result<_>>()?;
            let mut out = vec![Vec::<MatFq>::new()];
            for fac in &factors {
                let mut next = Vec::with_capacity(out.len() * fac.len());
                for prefix in &out {
                    for g in fac {
                        let mut p = prefix.clone();
                        p.push(g.clone());
                        next.push(p);
                    }
                }
                out = next;
            }
            out.into_iter().map(|blocks| MatFq::block_diag(&blocks)).collect()
        }
        GroupSpec::Symmetric { n } => permutations(*n).iter().map(|p| permutation_matrix(f, p)).collect(),
        GroupSpec::Explicit { degree, generators, .. } => {
            let mut seen: HashSet<MatFq> = HashSet::new();
            let id = MatFq::identity(f, *degree);
            let mut queue = VecDeque::from([id.clone()]);
            seen.insert(id);
            let mut out = Vec::new();
            while let Some(g) = queue.pop_front() {
                for s in generators {
                    let h = g.mul(s);
                    if !seen.contains(&h) {
                        if seen.len() as u64 >= bound {
                            return Err(Error::OrderBoundExceeded { order: seen.len() as u128 + 1, bound });
                        }
                        seen.insert(h.clone());
                        queue.push_back(h);
                    }
                }
                out.push(g);
            }
            out
        }
    };
    Ok(els)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Matrix sending `e_i` to `e_{perm[i]}`.
pub fn permutation_matrix(f: Field, perm: &[usize]) -> MatFq {
    let n = perm.len();
    let mut m = MatFq::zeros(f, n, n);
    for (i, &p) in perm.iter().enumerate() {
        m.set(p, i, 1);
    }
    m
}

/// Inverse of [`permutation_matrix`].
pub fn permutation_of(m: &MatFq) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut perm = vec![usize::MAX; n];
    for c in 0..n {
        let ones: Vec<usize> = (0..n).filter(|&r| m.get(r, c) != 0).collect();
        if ones.len() != 1 || m.get(ones[0], c) != 1 {
            return None;
        }
        perm[c] = ones[0];
    }
    let mut sorted = perm.clone();
    sorted.sort_unstable();
    (sorted == (0..n).collect::<Vec<_>>()).then_some(perm)
}

/// Cycle type, parts sorted descending.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// An enumerated group with an element index.
pub struct FiniteGroup {
    spec: GroupSpec,
    elements: Vec<MatFq>,
    index: HashMap<Vec<u8>, u32>,
}

impl FiniteGroup {
    pub fn new(spec: GroupSpec, bound: u64) -> Result<Self> {
        let elements = enumerate_group(&spec, bound)?;
        Ok(Self::from_elements(spec, elements))
    }

    pub fn from_elements(spec: GroupSpec, elements: Vec<MatFq>) -> Self {
        let index = elements.iter().enumerate().map(|(i, g)| (g.entries().to_vec(), i as u32)).collect();
        FiniteGroup { spec, elements, index }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
    pub fn elements(&self) -> &[MatFq] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &MatFq {
        &self.elements[i]
    }
    pub fn index_of(&self, g: &MatFq) -> Option<usize> {
        self.index.get(g.entries()).map(|&i| i as usize)
    }
    pub fn identity(&self) -> MatFq {
        MatFq::identity(self.elements[0].field(), self.spec.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        for (n, q, expected) in [(1, 2, 1), (2, 2, 6), (3, 2, 168), (2, 3, 48)] {
            let els = enumerate_group(&GroupSpec::gl(n, q), DEFAULT_ORDER_BOUND).unwrap();
            assert_eq!(els.len(), expected);
            assert_eq!(gl_order(n, q), expected as u128);
            let distinct: HashSet<&MatFq> = els.iter().collect();
            assert_eq!(distinct.len(), els.len());
        }
        assert_eq!(gl_order(4, 2), 20160);
        assert_eq!(gl_order(3, 3), 11232);
    }

    #[test]
    fn order_bound_rejects_gl4_f3() {
        let err = enumerate_group(&GroupSpec::gl(4, 3), DEFAULT_ORDER_BOUND).unwrap_err();
        assert!(matches!(err, Error::OrderBoundExceeded { .. }));
    }

    #[test]
    fn gl_enumeration_is_lexicographic() {
        let els = enumerate_group(&GroupSpec::gl(2, 2), DEFAULT_ORDER_BOUND).unwrap();
        assert!(els.windows(2).all(|w| w[0].entries() < w[1].entries()));
    }

    #[test]
    fn levi_and_symmetric_orders() {
        let m = enumerate_group(&GroupSpec::levi(2, &[2, 1]), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(m.len(), 6);
        assert!(m.iter().all(|g| GroupSpec::levi(2, &[2, 1]).contains(g)));
        let s4 = enumerate_group(&GroupSpec::Symmetric { n: 4 }, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(s4.len(), 24);
    }

    #[test]
    fn explicit_closure_generates_borel() {
        let f = field(2).unwrap();
        let gens = vec![
            MatFq::from_rows(f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            MatFq::from_rows(f, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]),
        ];
        let spec = GroupSpec::Explicit { name: "U3".into(), q: 2, degree: 3, generators: gens };
        assert_eq!(enumerate_group(&spec, 100).unwrap().len(), 8);
        assert!(enumerate_group(&spec, 4).is_err());
    }

    #[test]
    fn permutation_roundtrip_and_cycle_type() {
        let f = field(2).unwrap();
        let p = vec![1, 2, 0, 4, 3];
        let m = permutation_matrix(f, &p);
        assert_eq!(permutation_of(&m), Some(p.clone()));
        assert_eq!(cycle_type(&p), vec![3, 2]);
    }
}
