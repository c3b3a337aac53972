//! Multiplicities of Levi irreducibles in Jacquet modules of `GL_N(F_q)`,
//! their permutation-module and `P`-invariant reformulations, and the
//! convolution-algebra test for the pair `(G x M, P)`.
//!
//! For a finite group the `U`-coinvariants and `U`-invariants of a
//! representation coincide, so `J(pi)` is computed as `pi^U`.

mod hecke;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use hecke::{hecke_commutativity, GroupOps, HeckeCheckReport, HeckeWitness, MatrixGroupOps, HECKE_BASIS_BOUND};

use crate::chartab::modp::{add_mod, inv_mod, mul_mod};
use crate::chartab::{default_gl_prime, levi_table, lift_small, ModularCharTable, PrimeChoice, TableSource};
use crate::error::{Error, Result};
use crate::ffalg::MatFq;
use crate::groups::{
    levi_generators, orbit_partition, parabolic, radical_generators, ConjClassTable, ElementMap, FiniteGroup,
    GroupSpec, ParabolicData, DEFAULT_ORDER_BOUND,
};

/// Largest `|M| |U|` (or `|P|`) enumerated by the character sums.
pub const PAIR_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    JacquetSum,
    HomP,
    PermModule,
}

/// Matrix of multiplicities indexed by irreducibles of `G` (rows) and of
/// `M` (columns), in table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub q: u32,
    pub n: usize,
    pub composition: Vec<usize>,
    pub prime: u64,
    pub method: Method,
    pub matrix: Vec<Vec<u64>>,
    pub max_multiplicity: u64,
    pub g_degrees: Vec<u64>,
    pub m_degrees: Vec<u64>,
}

/// An entry of a multiplicity matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub row: usize,
    pub col: usize,
    pub multiplicity: u64,
}

impl MultiplicityReport {
    fn new(pdata: &ParabolicData, g: &ModularCharTable, m: &ModularCharTable, method: Method, matrix: Vec<Vec<u64>>) -> Self {
        let max_multiplicity = matrix.iter().flatten().copied().max().unwrap_or(0);
        Self {
            q: pdata.q(),
            n: pdata.n(),
            composition: pdata.composition().to_vec(),
            prime: g.p(),
            method,
            matrix,
            max_multiplicity,
            g_degrees: g.degrees().to_vec(),
            m_degrees: m.degrees().to_vec(),
        }
    }

    /// First entry in row-major order that exceeds `bound`.
    pub fn first_exceeding(&self, bound: u64) -> Option<Counterexample> {
        self.matrix.iter().enumerate().find_map(|(row, r)| {
            r.iter().position(|&x| x > bound).map(|col| Counterexample { row, col, multiplicity: r[col] })
        })
    }

    /// `sum_j m[i][j] d_j` for every row.
    pub fn row_masses(&self) -> Vec<u64> {
        self.matrix.iter().map(|r| r.iter().zip(&self.m_degrees).map(|(a, b)| a * b).sum()).collect()
    }
}

fn check_shared_prime(g: &ModularCharTable, m: &ModularCharTable) -> Result<()> {
    if g.prime() != m.prime() {
        return Err(Error::InvalidArgument(format!("tables use different primes {} and {}", g.p(), m.p())));
    }
    Ok(())
}

fn check_pairs(count: u128) -> Result<()> {
    if count > PAIR_BOUND as u128 {
        return Err(Error::OrderBoundExceeded { order: count, bound: PAIR_BOUND });
    }
    Ok(())
}

/// Embeds an `n x n` matrix as the top-left block of an `N x N` identity.
fn embed(h: &MatFq, big: usize) -> MatFq {
    let mut m = MatFq::identity(h.field(), big);
    m.set_block(0, 0, h);
    m
}

/// `lift(den^{-1} sum_{a,b} w[a][b] T_G[i][a] T_H[j][b or b*])` for all `i, j`.
fn lifted_pairing(
    tg: &ModularCharTable,
    th: &ModularCharTable,
    weights: &[Vec<u64>],
    den: u128,
    dual: bool,
) -> Result<Vec<Vec<u64>>> {
    let p = tg.p();
    let scale = inv_mod((den % p as u128) as u64, p);
    let bound = tg.lift_bound();
    let inv_h = th.classes().inverse_map();
    let nz: Vec<(usize, usize, u64)> = weights
        .iter()
        .enumerate()
        .flat_map(|(a, r)| r.iter().enumerate().filter(|(_, &w)| w != 0).map(move |(b, &w)| (a, b, w % p)))
        .collect();
    (0..tg.num_irreducibles())
        .into_par_iter()
        .map(|i| {
            (0..th.num_irreducibles())
                .map(|j| {
                    let s = nz.iter().fold(0, |acc, &(a, b, w)| {
                        let bb = if dual { inv_h[b] } else { b };
                        add_mod(acc, mul_mod(w, mul_mod(tg.value(i, a), th.value(j, bb), p), p), p)
                    });
                    lift_small(mul_mod(s, scale, p), bound, p)
                })
                .collect()
        })
        .collect()
}

/// `Ncount[a][b] = #{(m, u) in M x U : class_G(m u) = a, class_M(m) = b}`.
pub fn class_distribution_mu(g_classes: &ConjClassTable, m_classes: &ConjClassTable, pdata: &ParabolicData) -> Result<Vec<Vec<u64>>> {
    check_pairs(pdata.parabolic_order())?;
    let ms = pdata.enumerate_m(DEFAULT_ORDER_BOUND)?;
    let us = pdata.enumerate_u(DEFAULT_ORDER_BOUND)?;
    let (rg, rm) = (g_classes.num_classes(), m_classes.num_classes());
    Ok(ms
        .par_iter()
        .fold(
            || vec![vec![0u64; rm]; rg],
            |mut acc, m| {
                let b = m_classes.identify(m).expect("Levi element");
                for u in &us {
                    acc[g_classes.identify(&m.mul(u)).expect("group element")][b] += 1;
                }
                acc
            },
        )
        .reduce(|| vec![vec![0u64; rm]; rg], merge))
}

fn merge(mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

/// `m[i][j] = dim Hom_M(pi_i^U, rho_j)` by the character sum over `M x U`.
pub fn jacquet_multiplicities(g_table: &ModularCharTable, m_table: &ModularCharTable, pdata: &ParabolicData) -> Result<MultiplicityReport> {
    check_shared_prime(g_table, m_table)?;
    let nc = class_distribution_mu(g_table.classes(), m_table.classes(), pdata)?;
    let matrix = lifted_pairing(g_table, m_table, &nc, pdata.parabolic_order(), true)?;
    Ok(MultiplicityReport::new(pdata, g_table, m_table, Method::JacquetSum, matrix))
}

/// `dim pi_i^U` for every irreducible of `G`.
pub fn u_invariant_dims(g_table: &ModularCharTable, pdata: &ParabolicData) -> Result<Vec<u64>> {
    check_pairs(pdata.unipotent_order())?;
    let p = g_table.p();
    let mut counts = vec![0u64; g_table.classes().num_classes()];
    for u in pdata.enumerate_u(DEFAULT_ORDER_BOUND)? {
        counts[g_table.classes().identify(&u).expect("group element")] += 1;
    }
    let scale = inv_mod((pdata.unipotent_order() % p as u128) as u64, p);
    (0..g_table.num_irreducibles())
        .map(|i| {
            let s = counts.iter().enumerate().fold(0, |acc, (a, &c)| add_mod(acc, mul_mod(c % p, g_table.value(i, a), p), p));
            lift_small(mul_mod(s, scale, p), g_table.lift_bound(), p)
        })
        .collect()
}

/// `dim (pi_i (x) rho_j)^P` for all pairs, `P` acting on `rho_j` through
/// its Levi quotient; summed over an enumeration of `P` itself.
pub fn hom_p_dimensions(g_table: &ModularCharTable, m_table: &ModularCharTable, pdata: &ParabolicData) -> Result<MultiplicityReport> {
    check_shared_prime(g_table, m_table)?;
    check_pairs(pdata.parabolic_order())?;
    let (gc, mc) = (g_table.classes(), m_table.classes());
    let ps = pdata.enumerate_p(DEFAULT_ORDER_BOUND)?;
    let (rg, rm) = (gc.num_classes(), mc.num_classes());
    let weights = ps
        .par_iter()
        .fold(
            || vec![vec![0u64; rm]; rg],
            |mut acc, x| {
                let a = gc.identify(x).expect("group element");
                let b = mc.identify(&pdata.levi_part(x)).expect("Levi element");
                acc[a][b] += 1;
                acc
            },
        )
        .reduce(|| vec![vec![0u64; rm]; rg], merge);
    let matrix = lifted_pairing(g_table, m_table, &weights, pdata.parabolic_order(), false)?;
    Ok(MultiplicityReport::new(pdata, g_table, m_table, Method::HomP, matrix))
}

pub fn hom_p_dimension(g_table: &ModularCharTable, m_table: &ModularCharTable, pdata: &ParabolicData, i: usize, j: usize) -> Result<u64> {
    Ok(hom_p_dimensions(g_table, m_table, pdata)?.matrix[i][j])
}

/// One representative per left coset `xU`, smallest element index first.
pub fn coset_representatives(group: &FiniteGroup, pdata: &ParabolicData) -> Result<Vec<usize>> {
    let us = pdata.enumerate_u(DEFAULT_ORDER_BOUND)?;
    let mut seen = vec![false; group.elements().len()];
    let mut reps = Vec::new();
    for x in 0..seen.len() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        let g = group.element(x);
        for u in &us {
            seen[group.index_of(&g.mul(u)).expect("closed")] = true;
        }
    }
    Ok(reps)
}

/// Multiplicity of `pi_i ⊠ rho_j` in the permutation module on `G/U` with
/// `(g, m) xU = g x m^{-1} U`, from fixed-point counts on enumerated cosets.
pub fn perm_module_multiplicities(g_table: &ModularCharTable, m_table: &ModularCharTable, pdata: &ParabolicData) -> Result<MultiplicityReport> {
    check_shared_prime(g_table, m_table)?;
    let group = FiniteGroup::new(pdata.group_spec(), DEFAULT_ORDER_BOUND)?;
    let reps = coset_representatives(&group, pdata)?;
    let cosets: Vec<(MatFq, MatFq)> = reps
        .iter()
        .map(|&x| {
            let g = group.element(x).clone();
            let gi = g.inverse().expect("invertible");
            (g, gi)
        })
        .collect();
    let (gc, mc) = (g_table.classes(), m_table.classes());
    let m_rep: HashMap<&MatFq, usize> = mc.reps().iter().enumerate().map(|(c, r)| (r, c)).collect();
    // fix[a][c] = #{xU : x^{-1} g_a x lies in P with Levi part m_c}
    let fix: Vec<Vec<u64>> = (0..gc.num_classes())
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0u64; mc.num_classes()];
            for (x, xi) in &cosets {
                let y = xi.mul(gc.rep(a)).mul(x);
                if pdata.in_p(&y) {
                    if let Some(&c) = m_rep.get(&pdata.levi_part(&y)) {
                        row[c] += 1;
                    }
                }
            }
            row
        })
        .collect();
    let p = g_table.p();
    let (inv_g, inv_m) = (gc.inverse_map(), mc.inverse_map());
    // character of the permutation module against conj(chi_i (x) rho_j)
    let weights: Vec<Vec<u64>> = (0..gc.num_classes())
        .map(|a| {
            (0..mc.num_classes())
                .map(|c| mul_mod(mul_mod(gc.size(inv_g[a]) % p, mc.size(inv_m[c]) % p, p), fix[inv_g[a]][inv_m[c]] % p, p))
                .collect()
        })
        .collect();
    let den = gc.order() as u128 * mc.order() as u128;
    let matrix = lifted_pairing(g_table, m_table, &weights, den, false)?;
    Ok(MultiplicityReport::new(pdata, g_table, m_table, Method::PermModule, matrix))
}

pub fn perm_module_multiplicity(g_table: &ModularCharTable, m_table: &ModularCharTable, pdata: &ParabolicData, i: usize, j: usize) -> Result<u64> {
    Ok(perm_module_multiplicities(g_table, m_table, pdata)?.matrix[i][j])
}

/// The tables attached to one parabolic of `GL_N(F_q)`.
pub struct JacquetSetup {
    pub pdata: ParabolicData,
    pub g_table: Arc<ModularCharTable>,
    pub m_table: ModularCharTable,
}

impl JacquetSetup {
    /// `prime` defaults to the admissible prime of `GL_N(F_q)`, shared by
    /// every factor of the Levi.
    pub fn new(q: u32, composition: &[usize], source: &dyn TableSource, prime: Option<PrimeChoice>) -> Result<Self> {
        let n = composition.iter().sum();
        let pdata = parabolic(n, q, composition)?;
        let prime = match prime {
            Some(p) => p,
            None => default_gl_prime(n, q)?,
        };
        let g_table = source.gl_table(n, q, prime)?;
        let m_table = levi_table(q, composition, source, prime)?;
        Ok(Self { pdata, g_table, m_table })
    }

    pub fn jacquet(&self) -> Result<MultiplicityReport> {
        jacquet_multiplicities(&self.g_table, &self.m_table, &self.pdata)
    }
    pub fn hom_p(&self) -> Result<MultiplicityReport> {
        hom_p_dimensions(&self.g_table, &self.m_table, &self.pdata)
    }
    pub fn perm_module(&self) -> Result<MultiplicityReport> {
        perm_module_multiplicities(&self.g_table, &self.m_table, &self.pdata)
    }
}

/// Agreement of the three multiplicity formulas on one parabolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// `J(pi)` contains `rho` as often as `pi ⊠ rho~` occurs in `C[G/U]`.
    pub jacquet_eq_perm_dual: bool,
    /// `J(pi)` contains `rho` as often as `(pi ⊠ rho~)^P` has dimension.
    pub jacquet_eq_hom_dual: bool,
    /// The `P`-invariant and permutation-module matrices coincide.
    pub hom_eq_perm: bool,
    /// `J(pi)` contains `rho` as often as `pi ⊠ rho` occurs in `C[G/U]`;
    /// true exactly when the relevant Levi characters are real.
    pub jacquet_eq_perm_same: bool,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.jacquet_eq_perm_dual && self.jacquet_eq_hom_dual && self.hom_eq_perm
    }
}

pub fn equivalence_check(setup: &JacquetSetup) -> Result<EquivalenceReport> {
    let j = setup.jacquet()?;
    let h = setup.hom_p()?;
    let p = setup.perm_module()?;
    let dual: Vec<usize> = (0..setup.m_table.num_irreducibles()).map(|c| setup.m_table.dual_index(c)).collect();
    let all = |f: &dyn Fn(usize, usize) -> bool| (0..j.matrix.len()).all(|i| (0..dual.len()).all(|c| f(i, c)));
    Ok(EquivalenceReport {
        jacquet_eq_perm_dual: all(&|i, c| j.matrix[i][c] == p.matrix[i][dual[c]]),
        jacquet_eq_hom_dual: all(&|i, c| j.matrix[i][c] == h.matrix[i][dual[c]]),
        hom_eq_perm: h.matrix == p.matrix,
        jacquet_eq_perm_same: j.matrix == p.matrix,
    })
}

/// Multiplicity one for the maximal parabolic of type `(n, k)`.
pub fn verify_theorem_a(q: u32, n: usize, k: usize, source: &dyn TableSource) -> Result<(bool, MultiplicityReport)> {
    let report = JacquetSetup::new(q, &[n, k], source, None)?.jacquet()?;
    Ok((report.max_multiplicity <= 1, report))
}

/// First multiplicity `>= 2` in row order.
pub fn counterexample_search(q: u32, composition: &[usize], source: &dyn TableSource) -> Result<Option<Counterexample>> {
    Ok(JacquetSetup::new(q, composition, source, None)?.jacquet()?.first_exceeding(1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremGlReport {
    pub q: u32,
    pub n: usize,
    pub prime: u64,
    /// `m_H[pi][sigma]`, rows irreducibles of `GL_{n+1}`, columns of `GL_n`.
    pub matrix: Vec<Vec<u64>>,
    pub max_multiplicity: u64,
    /// `m_H(pi, sigma) = sum_chi m(pi, sigma ⊠ chi)` for every entry.
    pub identity_holds: bool,
    pub pass: bool,
}

/// Restriction of `J(pi)` from the Levi `GL_n x GL_1` to `H = GL_n`.
pub fn verify_theorem_gl(q: u32, n: usize, source: &dyn TableSource) -> Result<TheoremGlReport> {
    let setup = JacquetSetup::new(q, &[n, 1], source, None)?;
    let prime = setup.g_table.prime();
    let h_table = source.gl_table(n, q, prime)?;
    let pdata = &setup.pdata;
    check_pairs(h_table.classes().order() as u128 * pdata.unipotent_order())?;
    let hs = crate::groups::enumerate_group(&GroupSpec::gl(n, q), DEFAULT_ORDER_BOUND)?;
    let us = pdata.enumerate_u(DEFAULT_ORDER_BOUND)?;
    let (gc, hc) = (setup.g_table.classes(), h_table.classes());
    let big = pdata.n();
    let weights = hs
        .par_iter()
        .fold(
            || vec![vec![0u64; hc.num_classes()]; gc.num_classes()],
            |mut acc, h| {
                let s = hc.identify(h).expect("element of H");
                let e = embed(h, big);
                for u in &us {
                    acc[gc.identify(&e.mul(u)).expect("group element")][s] += 1;
                }
                acc
            },
        )
        .reduce(|| vec![vec![0u64; hc.num_classes()]; gc.num_classes()], merge);
    let den = hc.order() as u128 * pdata.unipotent_order();
    let matrix = lifted_pairing(&setup.g_table, &h_table, &weights, den, true)?;
    let jac = setup.jacquet()?;
    let labels = setup.m_table.labels().expect("product table");
    let identity_holds = matrix.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(s, &v)| {
            let sum: u64 = labels.iter().enumerate().filter(|(_, l)| l[0] == s).map(|(j, _)| jac.matrix[i][j]).sum();
            sum == v
        })
    });
    let max_multiplicity = matrix.iter().flatten().copied().max().unwrap_or(0);
    Ok(TheoremGlReport { q, n, prime: prime.p, matrix, max_multiplicity, identity_holds, pass: max_multiplicity <= 1 })
}

/// Orbits on `G` of `{(p, p') in P x P : levi(p) = levi(p')}` acting by
/// `g -> p g p'^{-1}`. These index the `diag(P)` double cosets in `G x M`
/// via `(g, m) -> g m^{-1}`.
pub fn diagonal_parabolic_orbits(group: &FiniteGroup, pdata: &ParabolicData) -> (Vec<usize>, usize) {
    let levi: Vec<(MatFq, MatFq)> = levi_generators(pdata.q(), pdata.composition())
        .into_iter()
        .map(|m| {
            let mi = m.inverse().expect("invertible");
            (m, mi)
        })
        .collect();
    let rad = radical_generators(pdata.q(), pdata.composition(), true);
    let mut maps: Vec<ElementMap> = Vec::new();
    for (m, mi) in &levi {
        maps.push(Box::new(move |g: &MatFq| m.mul(g).mul(mi)));
    }
    for u in &rad {
        maps.push(Box::new(move |g: &MatFq| u.mul(g)));
        maps.push(Box::new(move |g: &MatFq| g.mul(u)));
    }
    orbit_partition(group, &maps)
}

/// Commutativity of the `diag(P)`-biinvariant functions on `G x M`.
///
/// In the model `G x M -> G`, `(g, m) -> g m^{-1}`, the structure constants
/// are `|M|` times `#{a in G : a in alpha, a^{-1} z in beta}`.
pub fn parabolic_hecke_check(group: &FiniteGroup, pdata: &ParabolicData) -> Result<HeckeCheckReport> {
    let (basis, nbasis) = diagonal_parabolic_orbits(group, pdata);
    if nbasis > HECKE_BASIS_BOUND {
        return Err(Error::BasisBoundExceeded { size: nbasis, bound: HECKE_BASIS_BOUND });
    }
    let ops = MatrixGroupOps::new(group);
    hecke_commutativity(&ops, &basis, nbasis, pdata.levi_order() as u64)
}

/// Every composition of `n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// The fixed test matrix: `q = 2` with `N <= 4`, `q = 3` with `N <= 3`,
/// every composition.
pub fn configuration_matrix() -> Vec<(u32, Vec<usize>)> {
    [(2u32, 4usize), (3, 3)]
        .into_iter()
        .flat_map(|(q, top)| (1..=top).flat_map(compositions).map(move |c| (q, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::MemoTables;

    fn setup(q: u32, comp: &[usize]) -> JacquetSetup {
        JacquetSetup::new(q, comp, &MemoTables::default(), None).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let s = setup(2, &[1, 1]);
        let nc = class_distribution_mu(s.g_table.classes(), s.m_table.classes(), &s.pdata).unwrap();
        let nonzero: Vec<u64> = nc.iter().flatten().copied().filter(|&x| x > 0).collect();
        assert_eq!(nonzero, vec![1, 1]);
        assert_eq!(nc[0][0], 1);
        let s = setup(2, &[2, 1]);
        let nc = class_distribution_mu(s.g_table.classes(), s.m_table.classes(), &s.pdata).unwrap();
        assert_eq!(nc.iter().flatten().sum::<u64>(), 24);
    }

    #[test]
    fn whole_group_composition_gives_identity() {
        for (q, n) in [(2, 2), (3, 2), (2, 3)] {
            let s = setup(q, &[n]);
            let r = s.jacquet().unwrap();
            let k = r.matrix.len();
            // rows of both tables are sorted by the same key, so the identity
            // is the literal identity matrix
            for i in 0..k {
                for j in 0..k {
                    assert_eq!(r.matrix[i][j], u64::from(i == j));
                }
            }
        }
    }

    #[test]
    fn gl2_f2_borel() {
        let s = setup(2, &[1, 1]);
        let r = s.jacquet().unwrap();
        // rows: trivial, sign, 2-dimensional; hand oracle (chi(1) + chi(u)) / 2
        let col: Vec<u64> = r.matrix.iter().map(|row| row[0]).collect();
        assert_eq!(col, vec![1, 0, 1]);
        assert_eq!(r.g_degrees, vec![1, 1, 2]);
    }

    #[test]
    fn gl3_f2_borel_has_multiplicity_two() {
        let s = setup(2, &[1, 1, 1]);
        let r = s.jacquet().unwrap();
        assert_eq!(r.max_multiplicity, 2);
        let c = r.first_exceeding(1).unwrap();
        assert_eq!((r.g_degrees[c.row], c.multiplicity), (6, 2));
        let mass: u64 = r.matrix.iter().zip(&r.g_degrees).map(|(row, d)| row[0] * d).sum();
        assert_eq!(mass, 21);
        assert_eq!(r.row_masses(), u_invariant_dims(&s.g_table, &s.pdata).unwrap());
    }

    #[test]
    fn hom_p_examples() {
        let s = setup(2, &[1, 1]);
        let h = s.hom_p().unwrap();
        let triv_g = s.g_table.trivial_index();
        let triv_m = s.m_table.trivial_index();
        assert_eq!(h.matrix[triv_g][triv_m], 1);
        assert_eq!(h.matrix[2][triv_m], 1);
        let s = setup(2, &[1, 1, 1]);
        let h = s.hom_p().unwrap();
        let six = s.g_table.degrees().iter().position(|&d| d == 6).unwrap();
        assert_eq!(h.matrix[six][s.m_table.trivial_index()], 2);
    }

    #[test]
    fn perm_module_trivial_pair() {
        let s = setup(2, &[2, 1]);
        let r = s.perm_module().unwrap();
        assert_eq!(r.matrix[s.g_table.trivial_index()][s.m_table.trivial_index()], 1);
    }

    #[test]
    fn theorem_a_examples() {
        let src = MemoTables::default();
        assert!(verify_theorem_a(2, 1, 1, &src).unwrap().0);
        assert!(verify_theorem_a(3, 2, 1, &src).unwrap().0);
        assert!(counterexample_search(2, &[2, 1], &src).unwrap().is_none());
        assert_eq!(counterexample_search(2, &[1, 1, 1], &src).unwrap().unwrap().multiplicity, 2);
    }

    #[test]
    fn theorem_gl_examples() {
        let src = MemoTables::default();
        for (q, n) in [(2, 1), (2, 2), (3, 2)] {
            let r = verify_theorem_gl(q, n, &src).unwrap();
            assert!(r.pass && r.identity_holds, "q={q} n={n}");
        }
    }

    #[test]
    fn hecke_on_small_parabolics() {
        let pd = parabolic(3, 2, &[2, 1]).unwrap();
        let g = FiniteGroup::new(pd.group_spec(), DEFAULT_ORDER_BOUND).unwrap();
        assert!(parabolic_hecke_check(&g, &pd).unwrap().commutative);
        let pd = parabolic(3, 2, &[1, 1, 1]).unwrap();
        let r = parabolic_hecke_check(&g, &pd).unwrap();
        assert!(!r.commutative);
        let w = r.witness.unwrap();
        assert_ne!(w.left, w.right);
    }

    #[test]
    fn formulas_agree_up_to_contragredient() {
        let src = MemoTables::default();
        for (q, comp) in [(2, vec![2, 1]), (2, vec![1, 1, 1]), (3, vec![1, 1])] {
            let e = equivalence_check(&JacquetSetup::new(q, &comp, &src, None).unwrap()).unwrap();
            assert!(e.holds() && e.jacquet_eq_perm_same, "{q} {comp:?}");
        }
        // GL_2(F_3) has non-real irreducibles, so the pairing must use rho~
        let e = equivalence_check(&JacquetSetup::new(3, &[2], &src, None).unwrap()).unwrap();
        assert!(e.holds() && !e.jacquet_eq_perm_same);
    }

    #[test]
    fn compositions_count() {
        for n in 1..=6 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(configuration_matrix().len(), 1 + 2 + 4 + 8 + 1 + 2 + 4);
    }
}
