use std::collections::VecDeque;

use super::spec::FiniteGroup;
use crate::ffalg::{field, Field, MatFq};

/// A bijection of the group's element set, given on matrices.
pub type ElementMap<'a> = Box<dyn Fn(&MatFq) -> MatFq + Sync + 'a>;

/// Partition of the elements of `group` into orbits of the group generated
/// by `maps`. Orbits are numbered by their smallest element index; returns
/// the orbit id of every element and the number of orbits.
pub fn orbit_partition(group: &FiniteGroup, maps: &[ElementMap<'_>]) -> (Vec<usize>, usize) {
    let n = group.elements().len();
    let mut orbit = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let g = group.element(x);
            for m in maps {
                let j = group.index_of(&m(g)).expect("map preserves the group");
                if orbit[j] == usize::MAX {
                    orbit[j] = count;
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    (orbit, count)
}

/// Generators of `GL_n(F_q)`: all transvections `I + t E_ij` and
/// `diag(zeta, 1, ..., 1)` for a generator `zeta` of `F_q^*`.
pub fn gl_generators(f: Field, n: usize) -> Vec<MatFq> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in f.nonzero() {
                let mut m = MatFq::identity(f, n);
                m.set(i, j, t);
                gens.push(m);
            }
        }
    }
    if f.q() > 2 && n > 0 {
        let mut d = MatFq::identity(f, n);
        d.set(0, 0, f.generator());
        gens.push(d);
    }
    gens
}

/// Generators of the block-diagonal Levi subgroup for a composition.
pub fn levi_generators(q: u32, composition: &[usize]) -> Vec<MatFq> {
    let f = field(q).expect("supported field");
    let n: usize = composition.iter().sum();
    let mut out = Vec::new();
    let mut off = 0;
    for &c in composition {
        for g in gl_generators(f, c) {
            let mut m = MatFq::identity(f, n);
            m.set_block(off, off, &g);
            out.push(m);
        }
        off += c;
    }
    out
}

/// Root-subgroup generators `I + t E_ij` of the block upper-unitriangular
/// radical (`upper = true`) or its opposite.
pub fn radical_generators(q: u32, composition: &[usize], upper: bool) -> Vec<MatFq> {
    let f = field(q).expect("supported field");
    let n: usize = composition.iter().sum();
    let block_of: Vec<usize> = composition.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ok = if upper { block_of[i] < block_of[j] } else { block_of[i] > block_of[j] };
            if !ok {
                continue;
            }
            for t in f.nonzero() {
                let mut m = MatFq::identity(f, n);
                m.set(i, j, t);
                out.push(m);
            }
        }
    }
    out
}
