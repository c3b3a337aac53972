use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use super::spec::{cycle_type, permutation_of, FiniteGroup, GroupSpec};
use crate::error::{Error, Result};
use crate::ffalg::{invariant_factors, MatFq};

/// Conjugation-invariant key used to bucket elements.
pub type ClassKey = Vec<u8>;

/// Complete conjugacy invariant for GL and Levi groups (invariant factors of
/// each diagonal block) and for `S_n` (cycle type). `None` for explicit
/// subgroups, which are classified by orbit search instead.
pub fn class_key(spec: &GroupSpec, g: &MatFq) -> Option<ClassKey> {
    match spec {
        GroupSpec::GL { .. } => Some(invariant_factor_key(g)),
        GroupSpec::Levi { composition, .. } => {
            let mut key = Vec::new();
            let mut off = 0;
            for &c in composition {
                key.push(0xFE);
                key.extend(invariant_factor_key(&g.block(off, off, c, c)));
                off += c;
            }
            Some(key)
        }
        GroupSpec::Symmetric { .. } => permutation_of(g).map(|p| cycle_type(&p).iter().map(|&x| x as u8).collect()),
        GroupSpec::Explicit { .. } => None,
    }
}

fn invariant_factor_key(g: &MatFq) -> ClassKey {
    let mut key = Vec::new();
    for f in invariant_factors(g) {
        key.push(0xFF);
        key.extend_from_slice(f.coeffs());
    }
    key
}

#[derive(Clone, Debug)]
enum Classifier {
    Keys(HashMap<ClassKey, usize>),
    Elements(HashMap<Vec<u8>, usize>),
}

/// Conjugacy classes with representatives, sizes and the inverse-class map.
/// Class 0 is the identity; the remaining classes are numbered by first
/// appearance in the group's enumeration order.
#[derive(Clone, Debug)]
pub struct ConjClassTable {
    spec: GroupSpec,
    order: u64,
    reps: Vec<MatFq>,
    sizes: Vec<u64>,
    inverse_map: Vec<usize>,
    classifier: Classifier,
}

impl ConjClassTable {
    /// Buckets an enumerated group into classes. Uses [`class_key`] when
    /// available, conjugation-orbit BFS otherwise.
    pub fn build(group: &FiniteGroup) -> Self {
        match group.spec() {
            GroupSpec::Explicit { generators, .. } => Self::by_orbits(group, generators),
            spec => Self::by_keys(group, spec),
        }
    }

    fn by_keys(group: &FiniteGroup, spec: &GroupSpec) -> Self {
        let id = group.identity();
        let id_key = class_key(spec, &id).expect("keyed group");
        let keys: Vec<ClassKey> = group
            .elements()
            .par_iter()
            .map(|g| class_key(spec, g).expect("keyed group"))
            .collect();
        let mut lookup: HashMap<ClassKey, usize> = HashMap::new();
        lookup.insert(id_key, 0);
        let mut reps = vec![id];
        let mut sizes = vec![0u64];
        for (g, key) in group.elements().iter().zip(keys) {
            let next = reps.len();
            let c = *lookup.entry(key).or_insert(next);
            if c == next {
                reps.push(g.clone());
                sizes.push(0);
            }
            sizes[c] += 1;
        }
        let classifier = Classifier::Keys(lookup);
        Self::finish(spec.clone(), group.order(), reps, sizes, classifier)
    }

    /// Classes as orbits of conjugation by the given generators.
    pub fn by_orbits(group: &FiniteGroup, generators: &[MatFq]) -> Self {
        let n = group.elements().len();
        let gens: Vec<(MatFq, MatFq)> = generators
            .iter()
            .map(|s| (s.clone(), s.inverse().expect("generator invertible")))
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let id_idx = group.index_of(&group.identity()).expect("identity present");
        let mut order: Vec<usize> = vec![id_idx];
        order.extend((0..n).filter(|&i| i != id_idx));
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(group.element(start).clone());
            class_of[start] = c;
            let mut size = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let g = group.element(x);
                for (s, si) in &gens {
                    let h = s.mul(g).mul(si);
                    let j = group.index_of(&h).expect("generators normalise the group");
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            sizes.push(size);
        }
        let lookup = group
            .elements()
            .iter()
            .zip(&class_of)
            .map(|(g, &c)| (g.entries().to_vec(), c))
            .collect();
        Self::finish(group.spec().clone(), group.order(), reps, sizes, Classifier::Elements(lookup))
    }

    fn finish(spec: GroupSpec, order: u64, reps: Vec<MatFq>, sizes: Vec<u64>, classifier: Classifier) -> Self {
        let mut t = ConjClassTable { spec, order, reps, sizes, inverse_map: Vec::new(), classifier };
        t.inverse_map = t
            .reps
            .iter()
            .map(|r| t.identify(&r.inverse().expect("group element")).expect("inverse in group"))
            .collect();
        t
    }

    /// Rebuilds a keyed table from stored representatives (cache load).
    pub fn from_parts(spec: GroupSpec, order: u64, reps: Vec<MatFq>, sizes: Vec<u64>, inverse_map: Vec<usize>) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            let key = class_key(&spec, r)
                .ok_or_else(|| Error::InvalidArgument(format!("{spec} has no class key")))?;
            if lookup.insert(key, i).is_some() {
                return Err(Error::InvalidArgument("duplicate class representative".into()));
            }
        }
        if sizes.len() != reps.len() || inverse_map.len() != reps.len() || sizes.iter().sum::<u64>() != order {
            return Err(Error::InvalidArgument("inconsistent class data".into()));
        }
        Ok(ConjClassTable { spec, order, reps, sizes, inverse_map, classifier: Classifier::Keys(lookup) })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }
    pub fn reps(&self) -> &[MatFq] {
        &self.reps
    }
    pub fn rep(&self, j: usize) -> &MatFq {
        &self.reps[j]
    }
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }
    pub fn size(&self, j: usize) -> u64 {
        self.sizes[j]
    }
    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_map
    }
    pub fn inverse_class(&self, j: usize) -> usize {
        self.inverse_map[j]
    }
    pub fn centralizer_order(&self, j: usize) -> u64 {
        self.order / self.sizes[j]
    }

    /// Class index of `g`, or `None` if `g` is not in the group.
    pub fn identify(&self, g: &MatFq) -> Option<usize> {
        match &self.classifier {
            Classifier::Keys(map) => {
                if !self.spec.contains(g) {
                    return None;
                }
                class_key(&self.spec, g).and_then(|k| map.get(&k).copied())
            }
            Classifier::Elements(map) => map.get(g.entries()).copied(),
        }
    }

    /// Class of every element of `group`, in element order.
    pub fn classify_all(&self, group: &FiniteGroup) -> Vec<usize> {
        group
            .elements()
            .par_iter()
            .map(|g| self.identify(g).expect("element of the group"))
            .collect()
    }
}

/// Conjugacy classes of an enumerable group.
pub fn conjugacy_classes(spec: &GroupSpec, bound: u64) -> Result<(FiniteGroup, ConjClassTable)> {
    let g = FiniteGroup::new(spec.clone(), bound)?;
    let t = ConjClassTable::build(&g);
    Ok((g, t))
}

/// Full tensor of class algebra constants `a_{ijk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConstants {
    r: usize,
    values: Vec<u64>,
}

impl ClassConstants {
    /// `a_{ijk} = #{(x, y) : x in C_i, y in C_j, xy = z}` for a fixed `z` in
    /// `C_k`. For each `k` the loop runs over all `w` in `G` with `x = w^{-1}`
    /// and `y = w z`.
    pub fn compute(group: &FiniteGroup, table: &ConjClassTable) -> Result<Self> {
        let r = table.num_classes();
        let class_of = table.classify_all(group);
        let slices: Vec<Vec<u64>> = (0..r)
            .into_par_iter()
            .map(|k| {
                let z = table.rep(k);
                let mut counts = vec![0u64; r * r];
                for (w, &cw) in group.elements().iter().zip(&class_of) {
                    let i = table.inverse_class(cw);
                    let y = w.mul(z);
                    let j = class_of[group.index_of(&y).expect("closed under products")];
                    counts[i * r + j] += 1;
                }
                counts
            })
            .collect();
        let mut values = vec![0u64; r * r * r];
        for (k, slice) in slices.iter().enumerate() {
            for ij in 0..r * r {
                values[ij * r + k] = slice[ij];
            }
        }
        let cc = ClassConstants { r, values };
        cc.check_counting_identity(table)?;
        Ok(cc)
    }

    pub fn num_classes(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.values[(i * self.r + j) * self.r + k]
    }

    /// `sum_k a_{ijk} |C_k| = |C_i| |C_j|`.
    pub fn check_counting_identity(&self, table: &ConjClassTable) -> Result<()> {
        for i in 0..self.r {
            for j in 0..self.r {
                let lhs: u64 = (0..self.r).map(|k| self.get(i, j, k) * table.size(k)).sum();
                if lhs != table.size(i) * table.size(j) {
                    return Err(Error::InvalidArgument(format!("class constant counting identity fails at ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

/// Single class constant by iterating over `C_i`.
pub fn class_constant(group: &FiniteGroup, table: &ConjClassTable, i: usize, j: usize, k: usize) -> u64 {
    let z = table.rep(k);
    group
        .elements()
        .iter()
        .filter(|x| table.identify(x) == Some(i))
        .filter(|x| {
            let y = x.inverse().expect("group element").mul(z);
            table.identify(&y) == Some(j)
        })
        .count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exponent: lcm of the orders of the class representatives.
pub fn exponent(table: &ConjClassTable) -> u64 {
    table.reps().iter().map(|r| r.order()).fold(1, lcm)
}

/// Every class as a set of element indices (for orbit cross-checks).
pub fn class_members(group: &FiniteGroup, table: &ConjClassTable) -> Vec<HashSet<usize>> {
    let mut out = vec![HashSet::new(); table.num_classes()];
    for (i, c) in table.classify_all(group).into_iter().enumerate() {
        out[c].insert(i);
    }
    out
}
