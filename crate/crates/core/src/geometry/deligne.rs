use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffalg::{combine, commutant_space, field, MatFq, Subspace};
use crate::groups::{enumerate_group, GroupSpec, DEFAULT_ORDER_BOUND};

fn apply(a: &MatFq, v: &[u8]) -> Vec<u8> {
    a.mul(&MatFq::column(a.field(), v)).col(0)
}

fn kernel_of_power(a: &MatFq, j: usize) -> Subspace {
    Subspace::kernel(&a.pow(j as u64))
}

/// Jordan chains `[v, Av, ..., A^{m-1} v]` of a nilpotent `A`, longest
/// first. Chain tops at each length are the greedy complement, in RREF
/// basis order of `Ker A^m`, of `Ker A^{m-1}` plus the longer chains.
pub fn jordan_chains(a: &MatFq) -> Result<Vec<Vec<Vec<u8>>>> {
    if !a.is_square() || !a.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = a.rows();
    let f = a.field();
    let s = (0..=n).find(|&j| a.pow(j as u64).is_zero()).unwrap();
    let mut chains: Vec<Vec<Vec<u8>>> = Vec::new();
    for m in (1..=s).rev() {
        let km = kernel_of_power(a, m);
        let mut w = kernel_of_power(a, m - 1);
        // vectors of the longer chains at height m
        let carried: Vec<Vec<u8>> = chains.iter().map(|c| c[c.len() - m].clone()).collect();
        if !carried.is_empty() {
            w = w.sum(&Subspace::span(f, n, &carried));
        }
        for v in km.vectors() {
            if w.contains(&v) {
                continue;
            }
            w = w.sum(&Subspace::span(f, n, std::slice::from_ref(&v)));
            let mut chain = vec![v];
            for _ in 1..m {
                let next = apply(a, chain.last().unwrap());
                chain.push(next);
            }
            chains.push(chain);
        }
    }
    Ok(chains)
}

/// The filtration `D[i]` attached to a nilpotent `A`: in a Jordan basis the
/// chain vector `A^j v` of a length-`m` chain has weight `2j - (m - 1)`, and
/// `D[i]` is spanned by the basis vectors of weight `>= i`.
///
/// `A` raises weights by 2, so `A^l` maps `Gr[-l]` isomorphically onto
/// `Gr[l]`.
#[derive(Clone, Debug)]
pub struct DeligneFiltration {
    pub a: MatFq,
    pub chains: Vec<Vec<Vec<u8>>>,
    /// Largest Jordan block.
    pub s: usize,
    /// `D[i]` for `i` in `-(s-1) ..= s`.
    levels: Vec<Subspace>,
}

impl DeligneFiltration {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn lowest(&self) -> i64 {
        -(self.s as i64 - 1)
    }

    /// `D[i]` for any integer `i`.
    pub fn d(&self, i: i64) -> Subspace {
        let f = self.a.field();
        let lo = self.lowest();
        if i < lo {
            Subspace::full(f, self.dim())
        } else if i >= self.s as i64 {
            Subspace::zero(f, self.dim())
        } else {
            self.levels[(i - lo) as usize].clone()
        }
    }

    /// `D_+[i] = D[i] ∩ Ker A`.
    pub fn ker_level(&self, i: i64) -> Subspace {
        self.d(i).intersect(&Subspace::kernel(&self.a))
    }

    /// Chain bottoms as columns: a basis of `Ker A`.
    pub fn ker_basis(&self) -> MatFq {
        let f = self.a.field();
        let cols: Vec<Vec<u8>> = self.chains.iter().map(|c| c.last().unwrap().clone()).collect();
        MatFq::from_rows(f, &cols).transpose()
    }

    /// `v -> ` coordinates of `v + AV` on the chain tops (`chains x N`).
    pub fn coker_projection(&self) -> MatFq {
        let f = self.a.field();
        let all: Vec<Vec<u8>> = self.chains.iter().flatten().cloned().collect();
        let jinv = MatFq::from_rows(f, &all).transpose().inverse().expect("Jordan basis");
        let mut rows = Vec::new();
        let mut pos = 0;
        for c in &self.chains {
            rows.push(jinv.row(pos).to_vec());
            pos += c.len();
        }
        MatFq::from_rows(f, &rows)
    }

    /// `D_-[i]`: the image of `D[i]` in `Coker A`, in top coordinates.
    pub fn coker_level(&self, i: i64) -> Subspace {
        let f = self.a.field();
        let d = self.d(i);
        if d.dim() == 0 {
            return Subspace::zero(f, self.chains.len());
        }
        d.image(&self.coker_projection())
    }

    /// Checks the three defining properties over the full index range.
    pub fn verify(&self) -> bool {
        filtration_properties(&self.a, &|i| self.d(i), self.lowest() - 2, self.s as i64 + 2)
    }
}

/// Decreasing, degree 2, and `A^l : Gr[-l] -> Gr[l]` bijective for `l >= 0`,
/// on the index window `lo ..= hi` (outside it `D` is `V` below, `0` above).
fn filtration_properties(a: &MatFq, d: &dyn Fn(i64) -> Subspace, lo: i64, hi: i64) -> bool {
    let decreasing = (lo..hi).all(|i| d(i + 1).is_subspace_of(&d(i)));
    let degree_two = (lo..=hi).all(|i| d(i).image(a).is_subspace_of(&d(i + 2)));
    let graded = (0..=hi.max(-lo)).all(|l| {
        let al = a.pow(l as u64);
        let src = d(-l).dim() - d(-l + 1).dim();
        let tgt = d(l).dim() - d(l + 1).dim();
        let upper = d(l + 1);
        let img = d(-l).image(&al).sum(&upper);
        src == tgt && img.dim() - upper.dim() == tgt && d(l).is_subspace_of(&img)
    });
    decreasing && degree_two && graded
}

pub fn deligne_filtration(a: &MatFq) -> Result<DeligneFiltration> {
    let chains = jordan_chains(a)?;
    let f = a.field();
    let n = a.rows();
    let s = chains.iter().map(Vec::len).max().unwrap_or(0);
    let lo = -(s as i64 - 1);
    let levels = (lo..=s as i64)
        .map(|i| {
            let vecs: Vec<Vec<u8>> = chains
                .iter()
                .flat_map(|c| {
                    let m = c.len() as i64;
                    c.iter().enumerate().filter(move |(j, _)| 2 * *j as i64 - (m - 1) >= i).map(|(_, v)| v.clone())
                })
                .collect();
            Subspace::span(f, n, &vecs)
        })
        .collect();
    let df = DeligneFiltration { a: a.clone(), chains, s, levels };
    debug_assert!(df.verify());
    Ok(df)
}

/// Every filtration `V = D[-(N-1)] ⊇ ... ⊇ D[N] = 0` that is of degree 2
/// for `A` with bijective `A^l : Gr[-l] -> Gr[l]`. Any filtration with the
/// two properties has its jumps in this window.
pub fn all_deligne_type_filtrations(a: &MatFq) -> Vec<Vec<Subspace>> {
    let f = a.field();
    let n = a.rows();
    let subs = Subspace::all(f, n);
    let idx: HashMap<&Subspace, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let contains: Vec<Vec<bool>> = subs.iter().map(|x| subs.iter().map(|y| y.is_subspace_of(x)).collect()).collect();
    let image: Vec<usize> = subs.iter().map(|s| idx[&s.image(a)]).collect();
    let full = idx[&Subspace::full(f, n)];
    let zero = idx[&Subspace::zero(f, n)];
    let lo = -(n as i64 - 1);
    let len = 2 * n ; // indices lo ..= n
    let mut out = Vec::new();
    let mut chain = vec![full];
    fn rec(
        chain: &mut Vec<usize>,
        len: usize,
        contains: &[Vec<bool>],
        image: &[usize],
        zero: usize,
        found: &mut Vec<Vec<usize>>,
    ) {
        if chain.len() == len {
            found.push(chain.clone());
            return;
        }
        let prev = *chain.last().unwrap();
        let candidates: Vec<usize> = if chain.len() == len - 1 { vec![zero] } else { (0..contains.len()).filter(|&c| contains[prev][c]).collect() };
        for c in candidates {
            // A D[i-2] ⊆ D[i]
            if chain.len() >= 2 && !contains[c][image[chain[chain.len() - 2]]] {
                continue;
            }
            chain.push(c);
            rec(chain, len, contains, image, zero, found);
            chain.pop();
        }
    }
    let mut found = Vec::new();
    rec(&mut chain, len, &contains, &image, zero, &mut found);
    for cand in found {
        let d = |i: i64| -> Subspace {
            if i < lo {
                subs[full].clone()
            } else if i >= n as i64 {
                subs[zero].clone()
            } else {
                subs[cand[(i - lo) as usize]].clone()
            }
        };
        if filtration_properties(a, &d, lo - 2, n as i64 + 2) {
            out.push(cand.iter().map(|&c| subs[c].clone()).collect());
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub q: u32,
    pub dim: usize,
    pub nilpotents: usize,
    pub pass: bool,
    /// Operators with zero or several admissible filtrations, or a unique
    /// one different from the constructed filtration.
    pub failures: Vec<MatFq>,
}

/// Whether `A` has exactly one admissible filtration and it is the
/// constructed one.
pub fn unique_filtration_matches(a: &MatFq) -> Result<bool> {
    let df = deligne_filtration(a)?;
    let all = all_deligne_type_filtrations(a);
    let n = a.rows() as i64;
    Ok(all.len() == 1 && (-(n - 1)..=n).zip(&all[0]).all(|(i, s)| df.d(i) == *s))
}

/// Exhaustive uniqueness over every nilpotent operator on `F_q^dim`.
pub fn deligne_uniqueness_check(q: u32, dim: usize) -> Result<UniquenessReport> {
    let f = field(q)?;
    if (q as u128).pow((dim * dim) as u32) > DEFAULT_ORDER_BOUND as u128 {
        return Err(Error::SizeBoundExceeded(format!("Mat_{dim}(F_{q}) too large for exhaustion")));
    }
    let nil: Vec<MatFq> = MatFq::all(f, dim, dim).filter(MatFq::is_nilpotent).collect();
    let mut failures = Vec::new();
    for a in &nil {
        if !unique_filtration_matches(a)? {
            failures.push(a.clone());
        }
    }
    Ok(UniquenessReport { q, dim, nilpotents: nil.len(), pass: failures.is_empty(), failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct NuImageReport {
    pub a: MatFq,
    /// Jordan block sizes, longest first.
    pub blocks: Vec<usize>,
    pub centralizer_order: usize,
    pub image_size: usize,
    pub pa_size: usize,
    pub pass: bool,
}

/// `{(g|Ker A, g|Coker A) : g in GL(V), gA = Ag}` equals the group `P_A` of
/// pairs preserving `D_+`, `D_-` with graded parts matched by `mu_A`.
///
/// Coordinates: chain bottoms on `Ker A`, chain tops on `Coker A`. In these
/// bases `mu_A = A^{m-1}` is the identity and both filtrations are
/// coordinate flags; both facts are checked against the filtration itself.
pub fn nu_image_check(a: &MatFq) -> Result<NuImageReport> {
    let df = deligne_filtration(a)?;
    let f = a.field();
    let n = a.rows();
    let c = df.chains.len();
    let lengths: Vec<usize> = df.chains.iter().map(Vec::len).collect();
    let kb = df.ker_basis();
    let qp = df.coker_projection();
    let tops = MatFq::from_rows(f, &df.chains.iter().map(|ch| ch[0].clone()).collect::<Vec<_>>()).transpose();
    let all: Vec<Vec<u8>> = df.chains.iter().flatten().cloned().collect();
    let jinv = MatFq::from_rows(f, &all).transpose().inverse().expect("Jordan basis");
    let bottom_rows: Vec<usize> = lengths.iter().scan(0, |p, &l| { *p += l; Some(*p - 1) }).collect();
    let ker_coords = |v: &MatFq| -> MatFq {
        let full = jinv.mul(v);
        MatFq::from_rows(f, &bottom_rows.iter().map(|&r| full.row(r).to_vec()).collect::<Vec<_>>())
    };

    // filtrations in these coordinates
    let flag = |pred: &dyn Fn(usize) -> bool| -> Subspace {
        let vecs: Vec<Vec<u8>> = (0..c).filter(|&j| pred(j)).map(|j| { let mut e = vec![0; c]; e[j] = 1; e }).collect();
        Subspace::span(f, c, &vecs)
    };
    let (lo, hi) = (df.lowest() - 1, df.s as i64 + 1);
    let mut plus_levels = Vec::new();
    let mut minus_levels = Vec::new();
    for i in lo..=hi {
        let kp = df.ker_level(i);
        let kp_coords = if kp.dim() == 0 { Subspace::zero(f, c) } else { Subspace::column_span(&ker_coords(&kp.basis().transpose())) };
        let expect_plus = flag(&|j| lengths[j] as i64 > i);
        let expect_minus = flag(&|j| -(lengths[j] as i64 - 1) >= i);
        if kp_coords != expect_plus || df.coker_level(i) != expect_minus {
            return Err(Error::InvalidArgument("induced filtrations are not coordinate flags".into()));
        }
        plus_levels.push(expect_plus);
        minus_levels.push(expect_minus);
    }
    for (j, ch) in df.chains.iter().enumerate() {
        if apply(&a.pow(lengths[j] as u64 - 1), &ch[0]) != *ch.last().unwrap() {
            return Err(Error::InvalidArgument("mu is not the identity on chain coordinates".into()));
        }
    }

    // image of the centralizer
    let basis = commutant_space(a);
    let image: HashSet<(MatFq, MatFq)> = MatFq::all(f, 1, basis.len())
        .map(|co| combine(&basis, co.entries()))
        .filter(MatFq::is_invertible)
        .map(|g| (ker_coords(&g.mul(&kb)), qp.mul(&g).mul(&tops)))
        .collect();
    let centralizer_order = MatFq::all(f, 1, basis.len()).filter(|co| combine(&basis, co.entries()).is_invertible()).count();

    // P_A from its definition
    let glc = enumerate_group(&GroupSpec::gl(c, f.q()), DEFAULT_ORDER_BOUND)?;
    let preserves = |x: &MatFq, levels: &[Subspace]| levels.iter().all(|s| s.dim() == 0 || s.is_invariant_under(x));
    let graded = |x: &MatFq| -> Vec<u8> {
        // diagonal blocks by chain length
        let mut out = Vec::new();
        for r in 0..c {
            for col in 0..c {
                if lengths[r] == lengths[col] {
                    out.push(x.get(r, col));
                }
            }
        }
        out
    };
    let mut by_gr: HashMap<Vec<u8>, Vec<&MatFq>> = HashMap::new();
    for y in glc.iter().filter(|y| preserves(y, &minus_levels)) {
        by_gr.entry(graded(y)).or_default().push(y);
    }
    let mut pa: HashSet<(MatFq, MatFq)> = HashSet::new();
    for x in glc.iter().filter(|x| preserves(x, &plus_levels)) {
        if let Some(ys) = by_gr.get(&graded(x)) {
            for y in ys {
                pa.insert((x.clone(), (*y).clone()));
            }
        }
    }
    let _ = n;
    Ok(NuImageReport {
        a: a.clone(),
        blocks: lengths,
        centralizer_order,
        image_size: image.len(),
        pa_size: pa.len(),
        pass: image == pa,
    })
}

/// One representative per nilpotent class of `Mat_n(F_q)`: Jordan forms
/// for the partitions of `n`.
pub fn nilpotent_representatives(q: u32, n: usize) -> Result<Vec<MatFq>> {
    let f = field(q)?;
    Ok(crate::symgrp::partitions(n)
        .into_iter()
        .map(|p| {
            let mut a = MatFq::zeros(f, n, n);
            let mut off = 0;
            for &m in p.parts() {
                for j in 0..m - 1 {
                    a.set(off + j + 1, off + j, 1);
                }
                off += m;
            }
            a
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> crate::ffalg::Field {
        field(2).unwrap()
    }

    fn jordan(q: u32, blocks: &[usize]) -> MatFq {
        let f = field(q).unwrap();
        let n = blocks.iter().sum();
        let mut a = MatFq::zeros(f, n, n);
        let mut off = 0;
        for &m in blocks {
            for j in 0..m - 1 {
                a.set(off + j, off + j + 1, 1);
            }
            off += m;
        }
        a
    }

    #[test]
    fn zero_operator_single_jump() {
        let a = MatFq::zeros(f2(), 3, 3);
        let d = deligne_filtration(&a).unwrap();
        assert_eq!(d.d(0).dim(), 3);
        assert_eq!(d.d(1).dim(), 0);
        assert!(d.verify());
    }

    #[test]
    fn j2_filtration() {
        let a = jordan(2, &[2]);
        let d = deligne_filtration(&a).unwrap();
        assert_eq!(d.d(-1).dim(), 2);
        assert_eq!(d.d(0), Subspace::kernel(&a));
        assert_eq!(d.d(1), Subspace::kernel(&a));
        assert_eq!(d.d(1), Subspace::column_span(&a));
        assert_eq!(d.d(2).dim(), 0);
        assert!(unique_filtration_matches(&a).unwrap());
    }

    #[test]
    fn j3_plus_j1_weights() {
        let a = jordan(2, &[3, 1]);
        let d = deligne_filtration(&a).unwrap();
        let dims: Vec<usize> = (-3..=3).map(|i| d.d(i).dim()).collect();
        // weights {2, 0, -2} ∪ {0}
        assert_eq!(dims, vec![4, 4, 3, 3, 1, 1, 0]);
        assert!(unique_filtration_matches(&a).unwrap());
    }

    #[test]
    fn not_nilpotent_rejected() {
        assert!(matches!(deligne_filtration(&MatFq::identity(f2(), 2)), Err(Error::NotNilpotent)));
    }

    #[test]
    fn uniqueness_small() {
        for dim in 1..=3 {
            let r = deligne_uniqueness_check(2, dim).unwrap();
            assert!(r.pass, "dim {dim}: {:?}", r.failures);
        }
    }

    #[test]
    fn nu_image_examples() {
        for blocks in [vec![1, 1], vec![2], vec![2, 1], vec![3, 1], vec![2, 2]] {
            let r = nu_image_check(&jordan(2, &blocks)).unwrap();
            assert!(r.pass, "{blocks:?}: {} vs {}", r.image_size, r.pa_size);
        }
        let r = nu_image_check(&MatFq::zeros(f2(), 2, 2)).unwrap();
        assert_eq!(r.pa_size, 6);
    }
}
