use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffalg::{field, MatFq};
use crate::groups::{gl_order, levi_generators, radical_generators, DEFAULT_ORDER_BOUND};

/// Which two-sided action of `{(p+, p-) : same Levi part}` is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoSided {
    /// `g -> p+ g p-^{-1}` on `GL_k` (the Key Lemma).
    UpperLeft,
    /// `phi -> p- phi p+^{-1}` on `Mat_k`: `V` filtered by the standard
    /// descending flag, `W` by its annihilator flag under the dot product,
    /// `mu` the identity on coordinate blocks.
    LowerLeft,
}

/// An orbit that is not closed under transposition.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitViolation {
    /// Members in lexicographic order.
    pub orbit: Vec<MatFq>,
    /// A member whose transpose lies outside the orbit.
    pub member: MatFq,
}

/// Which maps `V -> W` are partitioned into orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomDomain {
    /// Invertible maps only; the orbits of the Key Lemma under `phi -> phi^{-1}`.
    Isomorphisms,
    /// Every map. Rank-deficient maps can break transpose-closure: the
    /// positions of `ker phi` in `F` and of `im phi` in `G` swap roles.
    AllMaps,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCheckReport {
    pub q: u32,
    pub k: usize,
    pub composition: Vec<usize>,
    pub action: TwoSided,
    pub domain: HomDomain,
    pub orbits: usize,
    pub pass: bool,
    /// First violating orbit by smallest member.
    pub violation: Option<OrbitViolation>,
}

struct Action {
    left: Vec<MatFq>,
    right: Vec<MatFq>,
    conj: Vec<(MatFq, MatFq)>,
}

impl Action {
    fn new(q: u32, composition: &[usize], kind: TwoSided) -> Self {
        let upper = radical_generators(q, composition, true);
        let lower = radical_generators(q, composition, false);
        let conj = levi_generators(q, composition)
            .into_iter()
            .map(|m| {
                let mi = m.inverse().expect("invertible");
                (m, mi)
            })
            .collect();
        // right multiplication by generators; the generated group is the same
        let (left, right) = match kind {
            TwoSided::UpperLeft => (upper, lower),
            TwoSided::LowerLeft => (lower, upper),
        };
        Self { left, right, conj }
    }

    fn neighbours<'a>(&'a self, g: &'a MatFq) -> impl Iterator<Item = MatFq> + 'a {
        self.left
            .iter()
            .map(move |u| u.mul(g))
            .chain(self.right.iter().map(move |v| g.mul(v)))
            .chain(self.conj.iter().map(move |(m, mi)| m.mul(g).mul(mi)))
    }
}

fn check_composition(k: usize, composition: &[usize]) -> Result<()> {
    if composition.iter().sum::<usize>() != k || composition.contains(&0) {
        return Err(Error::InvalidArgument(format!("{composition:?} is not a composition of {k}")));
    }
    Ok(())
}

/// The orbit of `g` under the two-sided action, by BFS.
pub fn two_sided_orbit(q: u32, composition: &[usize], kind: TwoSided, g: &MatFq) -> Result<Vec<MatFq>> {
    check_composition(g.rows(), composition)?;
    let act = Action::new(q, composition, kind);
    let mut seen = std::collections::HashSet::from([g.clone()]);
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in act.neighbours(&x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<MatFq> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn orbit_check(
    q: u32,
    k: usize,
    composition: &[usize],
    kind: TwoSided,
    domain: HomDomain,
    space: Vec<MatFq>,
) -> Result<OrbitCheckReport> {
    check_composition(k, composition)?;
    let act = Action::new(q, composition, kind);
    let index: HashMap<&MatFq, usize> = space.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut orbit = vec![usize::MAX; space.len()];
    let mut count = 0;
    for start in 0..space.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in act.neighbours(&space[x]) {
                let j = index[&y];
                if orbit[j] == usize::MAX {
                    orbit[j] = count;
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    let bad = (0..space.len()).find(|&i| orbit[index[&space[i].transpose()]] != orbit[i]);
    let violation = bad.map(|i| {
        let mut members: Vec<MatFq> = (0..space.len()).filter(|&j| orbit[j] == orbit[i]).map(|j| space[j].clone()).collect();
        members.sort();
        let member = members.iter().find(|g| orbit[index[&g.transpose()]] != orbit[i]).unwrap().clone();
        OrbitViolation { orbit: members, member }
    });
    Ok(OrbitCheckReport {
        q,
        k,
        composition: composition.to_vec(),
        action: kind,
        domain,
        orbits: count,
        pass: violation.is_none(),
        violation,
    })
}

/// Every orbit of `{(p+, p-) : same Levi part}` on `GL_k(F_q)` under
/// `g -> p+ g p-^{-1}` is closed under transposition.
pub fn key_lemma_check(q: u32, k: usize, composition: &[usize]) -> Result<OrbitCheckReport> {
    let order = gl_order(k, q);
    if order > DEFAULT_ORDER_BOUND as u128 {
        return Err(Error::OrderBoundExceeded { order, bound: DEFAULT_ORDER_BOUND });
    }
    let f = field(q)?;
    let space: Vec<MatFq> = MatFq::all(f, k, k).filter(MatFq::is_invertible).collect();
    orbit_check(q, k, composition, TwoSided::UpperLeft, HomDomain::Isomorphisms, space)
}

/// The same statement for the filtered-space group acting on
/// `Hom(V, W) = Mat_k(F_q)` by `phi -> h phi g^{-1}`, restricted to `domain`.
pub fn dual_key_lemma_check(q: u32, k: usize, composition: &[usize], domain: HomDomain) -> Result<OrbitCheckReport> {
    let size = (q as u128).pow((k * k) as u32);
    if size > DEFAULT_ORDER_BOUND as u128 {
        return Err(Error::OrderBoundExceeded { order: size, bound: DEFAULT_ORDER_BOUND });
    }
    let f = field(q)?;
    let space = MatFq::all(f, k, k).filter(|m| domain == HomDomain::AllMaps || m.is_invertible()).collect();
    orbit_check(q, k, composition, TwoSided::LowerLeft, domain, space)
}

/// Re-verifies a violation: the orbit of `member` recomputed from scratch
/// does not contain its transpose.
pub fn violation_holds(q: u32, composition: &[usize], kind: TwoSided, member: &MatFq) -> Result<bool> {
    let orbit = two_sided_orbit(q, composition, kind, member)?;
    Ok(orbit.binary_search(&member.transpose()).is_err())
}
