//! The nine acceptance criteria, one line each. Runs as a plain binary so
//! the verdict lines are always printed; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use repcheck_core::chartab::{
    choose_prime_after, default_gl_prime, dixon_table, gl_exponent, kappa_selfduality_check,
    kappa_twists_are_contragredients, levi_table, MemoTables, ModularCharTable, TableSource,
};
use repcheck_core::ffalg::{field, MatFq};
use repcheck_core::geometry::{
    deligne_filtration, deligne_uniqueness_check, dual_key_lemma_check, key_lemma_check, nilpotent_representatives,
    nu_image_check, verify_geometric_statement, violation_holds, HomDomain, TwoSided,
};
use repcheck_core::groups::{gl_order, parabolic, ConjClassTable, FiniteGroup, GroupSpec, DEFAULT_ORDER_BOUND};
use repcheck_core::jacquet::{
    compositions, configuration_matrix, equivalence_check, parabolic_hecke_check, verify_theorem_a,
    verify_theorem_gl, JacquetSetup, MultiplicityReport,
};
use repcheck_core::symgrp::{
    adjoint_hecke_commute, iterated_lr, lr_coefficient, strong_gelfand_check, strong_gelfand_predicate,
    young_restriction_mult, Partition,
};

type Outcome = Result<String, String>;

const MAXIMAL: [(u32, usize, usize); 9] =
    [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 3, 1), (2, 1, 3), (2, 2, 2), (3, 1, 1), (3, 2, 1), (3, 1, 2)];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn theorem_a(src: &dyn TableSource) -> Outcome {
    for (q, n, k) in MAXIMAL {
        let (pass, r) = verify_theorem_a(q, n, k, src).map_err(err)?;
        ensure(pass && r.max_multiplicity == 1, || format!("q={q} ({n},{k}) max multiplicity {}", r.max_multiplicity))?;
    }
    Ok(format!("{} maximal parabolics, every multiplicity <= 1", MAXIMAL.len()))
}

fn theorem_gl(src: &dyn TableSource) -> Outcome {
    let cases = [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)];
    for (q, n) in cases {
        let r = verify_theorem_gl(q, n, src).map_err(err)?;
        ensure(r.pass, || format!("q={q} n={n} max multiplicity {}", r.max_multiplicity))?;
        ensure(r.identity_holds, || format!("q={q} n={n}: restriction identity fails"))?;
    }
    Ok(format!("{} cases, multiplicity one and the restriction identity hold", cases.len()))
}

fn equivalences(src: &dyn TableSource) -> Outcome {
    let mut literal_fail = Vec::new();
    for (q, n, k) in MAXIMAL {
        let setup = JacquetSetup::new(q, &[n, k], src, None).map_err(err)?;
        let r = equivalence_check(&setup).map_err(err)?;
        ensure(r.holds(), || format!("q={q} ({n},{k}): {r:?}"))?;
        if !r.jacquet_eq_perm_same {
            literal_fail.push(format!("q={q} ({n},{k})"));
        }
    }
    let info = if literal_fail.is_empty() {
        "same-index equality also holds everywhere".to_string()
    } else {
        format!("same-index equality fails at {}", literal_fail.join(", "))
    };
    Ok(format!("jacquet = perm at (i, dual j) = hom_P at (i, dual j) on all {} configurations; {info}", MAXIMAL.len()))
}

fn negative_control(src: &dyn TableSource) -> Outcome {
    let setup = JacquetSetup::new(2, &[1, 1, 1], src, None).map_err(err)?;
    let r = setup.jacquet().map_err(err)?;
    ensure(r.max_multiplicity == 2, || format!("max multiplicity {}", r.max_multiplicity))?;
    let masses = r.row_masses();
    let terms: BTreeSet<(u64, u64)> =
        masses.iter().zip(&r.g_degrees).filter(|(m, _)| **m > 0).map(|(&m, &d)| (d, m)).collect();
    let total: u64 = terms.iter().map(|(d, m)| d * m).sum();
    ensure(terms == BTreeSet::from([(1, 1), (8, 1), (6, 2)]), || format!("nonzero rows {terms:?}"))?;
    ensure(total == 21, || format!("mass {total}"))?;
    let g = FiniteGroup::new(GroupSpec::gl(3, 2), DEFAULT_ORDER_BOUND).map_err(err)?;
    let borel = parabolic_hecke_check(&g, &setup.pdata).map_err(err)?;
    ensure(!borel.commutative, || "Borel algebra is commutative".into())?;
    for (q, n, k) in MAXIMAL {
        let g = FiniteGroup::new(GroupSpec::gl(n + k, q), DEFAULT_ORDER_BOUND).map_err(err)?;
        let pd = parabolic(n + k, q, &[n, k]).map_err(err)?;
        let h = parabolic_hecke_check(&g, &pd).map_err(err)?;
        ensure(h.commutative, || format!("q={q} ({n},{k}) algebra is not commutative: {:?}", h.witness))?;
    }
    Ok(format!(
        "Borel of GL_3(F_2): max 2, mass 1*1 + 1*8 + 2*6 = 21, algebra non-commutative (basis {}); {} maximal cases commutative",
        borel.basis_size,
        MAXIMAL.len()
    ))
}

fn geometric() -> Outcome {
    let mut pairs = 0;
    for (q, top) in [(2u32, 4usize), (3, 3)] {
        for size in 1..=top {
            let r = verify_geometric_statement(q, size).map_err(err)?;
            ensure(r.pass && r.refutations.is_empty(), || format!("q={q} size {size}: {} refutations", r.refutations.len()))?;
            ensure(r.witnessed == r.counts.iter().map(|c| c.2).sum::<usize>(), || format!("q={q} size {size}: unwitnessed pairs"))?;
            pairs += r.witnessed;
        }
    }
    Ok(format!("{pairs} pairs witnessed, zero refutations"))
}

/// Brute-force orbit of `g` under every pair `(p+, p-)` of the Borel of
/// `GL_3(F_2)`; the Levi is trivial so the pairs are independent.
fn borel_orbit_f2(g: &MatFq) -> BTreeSet<MatFq> {
    let f = field(2).unwrap();
    let upper: Vec<MatFq> = (0..8u8)
        .map(|b| MatFq::from_rows(f, &[vec![1, b & 1, b >> 1 & 1], vec![0, 1, b >> 2 & 1], vec![0, 0, 1]]))
        .collect();
    let lower: Vec<MatFq> = upper.iter().map(MatFq::transpose).collect();
    let mut out = BTreeSet::new();
    for u in &upper {
        for l in &lower {
            out.insert(u.mul(g).mul(&l.inverse().unwrap()));
        }
    }
    out
}

fn key_lemma() -> Outcome {
    let mut checked = 0;
    for q in [2u32, 3, 5] {
        for k in 1..=2 {
            for comp in compositions(k) {
                let r = key_lemma_check(q, k, &comp).map_err(err)?;
                ensure(r.pass, || format!("q={q} {comp:?} fails: {:?}", r.violation))?;
                checked += 1;
            }
        }
    }
    let r = key_lemma_check(2, 3, &[1, 1, 1]).map_err(err)?;
    ensure(!r.pass, || "k=3 Borel unexpectedly passes".into())?;
    let f = field(2).unwrap();
    let frozen = MatFq::from_rows(f, &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 1, 0]]);
    let v = r.violation.ok_or("missing violation")?;
    ensure(v.member == frozen, || format!("violating member moved: {:?}", v.member.to_rows()))?;
    let orbit = borel_orbit_f2(&frozen);
    ensure(orbit.len() == 16 && v.orbit.iter().cloned().collect::<BTreeSet<_>>() == orbit, || "orbit mismatch".into())?;
    ensure(!orbit.contains(&frozen.transpose()), || "transpose lies in the orbit".into())?;
    ensure(violation_holds(2, &[1, 1, 1], TwoSided::UpperLeft, &frozen).map_err(err)?, || "BFS re-check disagrees".into())?;
    Ok(format!("{checked} cases with k <= 2 pass; k=3 (1,1,1) over F_2 fails at the frozen orbit of size 16"))
}

fn deligne() -> Outcome {
    let mut nilpotents = 0;
    for (q, top) in [(2u32, 4usize), (3, 3)] {
        let f = field(q).map_err(err)?;
        for n in 1..=top {
            for a in MatFq::all(f, n, n).filter(MatFq::is_nilpotent) {
                let d = deligne_filtration(&a).map_err(err)?;
                ensure(d.verify(), || format!("filtration invariants fail for {:?}", a.to_rows()))?;
                nilpotents += 1;
            }
        }
    }
    for dim in 1..=3 {
        let u = deligne_uniqueness_check(2, dim).map_err(err)?;
        ensure(u.pass, || format!("uniqueness fails in dim {dim}: {:?}", u.failures))?;
    }
    let mut classes = 0;
    for n in 1..=4 {
        for a in nilpotent_representatives(2, n).map_err(err)? {
            let r = nu_image_check(&a).map_err(err)?;
            ensure(r.pass, || format!("nu image differs for blocks {:?}", r.blocks))?;
            classes += 1;
        }
    }
    let mut all_maps_failures = Vec::new();
    for q in [2u32, 3] {
        for k in 1..=2 {
            for comp in compositions(k) {
                let r = dual_key_lemma_check(q, k, &comp, HomDomain::Isomorphisms).map_err(err)?;
                ensure(r.pass, || format!("dual lemma q={q} {comp:?}: {:?}", r.violation))?;
                if !dual_key_lemma_check(q, k, &comp, HomDomain::AllMaps).map_err(err)?.pass {
                    all_maps_failures.push(format!("q={q} {comp:?}"));
                }
            }
        }
    }
    Ok(format!(
        "{nilpotents} nilpotents satisfy the invariants; unique in dims 1..3; nu image = P_A on {classes} classes; \
         dual lemma holds on isomorphisms (on all maps it fails at {})",
        all_maps_failures.join(", ")
    ))
}

fn symmetric() -> Outcome {
    let mut swept = 0;
    for n in 1..=8 {
        for comp in compositions(n) {
            let g = strong_gelfand_check(&comp);
            ensure(g.pass == strong_gelfand_predicate(&comp), || format!("{comp:?}: verdict {} vs predicate", g.pass))?;
            let h = adjoint_hecke_commute(&comp).map_err(err)?;
            ensure(h.commutative == g.pass, || format!("{comp:?}: convolution algebra disagrees"))?;
            swept += 1;
        }
    }
    let p = |v: &[usize]| Partition::new(v.to_vec());
    let (lambda, mus) = (p(&[3, 2, 1]), [p(&[2, 1]), p(&[2, 1])]);
    let by_characters = young_restriction_mult(&lambda, &mus);
    let by_tableaux = lr_coefficient(&lambda, &mus[0], &mus[1]);
    ensure(by_characters == 2 && by_tableaux == 2 && iterated_lr(&lambda, &mus) == 2, || {
        format!("(3,2,1) -> (2,1)x(2,1): characters {by_characters}, tableaux {by_tableaux}")
    })?;
    let s33 = strong_gelfand_check(&[3, 3]);
    ensure(s33.max_multiplicity == 2, || format!("(3,3) max {}", s33.max_multiplicity))?;
    Ok(format!("{swept} compositions of n <= 8 agree; (3,3) has multiplicity 2 at (3,2,1) by both methods"))
}

fn entry_multiset(r: &MultiplicityReport) -> Vec<(u64, u64, u64)> {
    let mut v: Vec<_> = r
        .matrix
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &m)| (r.g_degrees[i], r.m_degrees[j], m)))
        .collect();
    v.sort();
    v
}

fn check_table(t: &ModularCharTable) -> Result<(), String> {
    t.validate().map_err(err)?;
    let order = t.classes().order();
    ensure(t.degrees().iter().map(|d| d * d).sum::<u64>() == order, || "sum of squares".into())
}

fn char_engine(src: &dyn TableSource) -> Outcome {
    let mut groups = 0;
    for (q, top) in [(2u32, 4usize), (3, 3)] {
        for n in 1..=top {
            let prime = default_gl_prime(n, q).map_err(err)?;
            let t = src.gl_table(n, q, prime).map_err(err)?;
            check_table(&t).map_err(|e| format!("GL_{n}(F_{q}): {e}"))?;
            ensure(kappa_selfduality_check(t.classes()) && kappa_twists_are_contragredients(&t), || {
                format!("GL_{n}(F_{q}): kappa")
            })?;
            let other = choose_prime_after(gl_exponent(n, q), gl_order(n, q) as u64, prime.p).map_err(err)?;
            let t2 = repcheck_core::chartab::compute_gl_table(n, q, other).map_err(err)?;
            check_table(&t2)?;
            let (mut d1, mut d2) = (t.degrees().to_vec(), t2.degrees().to_vec());
            d1.sort();
            d2.sort();
            ensure(d1 == d2, || format!("GL_{n}(F_{q}): degrees differ between primes"))?;
            groups += 1;
        }
    }
    for (q, comp) in configuration_matrix() {
        let n: usize = comp.iter().sum();
        let prime = default_gl_prime(n, q).map_err(err)?;
        let product = levi_table(q, &comp, src, prime).map_err(err)?;
        check_table(&product).map_err(|e| format!("Levi {comp:?} over F_{q}: {e}"))?;
        let m = FiniteGroup::new(GroupSpec::levi(q, &comp), DEFAULT_ORDER_BOUND).map_err(err)?;
        let direct = dixon_table(&m, Arc::new(ConjClassTable::build(&m)), prime).map_err(err)?;
        ensure(product.classes().reps() == direct.classes().reps(), || format!("Levi {comp:?}: class order"))?;
        let (mut a, mut b) = (product.values().to_vec(), direct.values().to_vec());
        a.sort();
        b.sort();
        ensure(a == b, || format!("Levi {comp:?} over F_{q}: product table differs from direct table"))?;
        let other = choose_prime_after(gl_exponent(n, q), gl_order(n, q) as u64, prime.p).map_err(err)?;
        let r1 = JacquetSetup::new(q, &comp, src, Some(prime)).map_err(err)?.jacquet().map_err(err)?;
        let r2 = JacquetSetup::new(q, &comp, src, Some(other)).map_err(err)?.jacquet().map_err(err)?;
        ensure(entry_multiset(&r1) == entry_multiset(&r2), || format!("q={q} {comp:?}: lifts differ between primes"))?;
        groups += 1;
    }
    Ok(format!("{groups} groups: orthogonality, sum of squares, two primes, product factorization, kappa"))
}

fn main() -> ExitCode {
    let tables = MemoTables::default();
    let criteria: [(&str, &dyn Fn() -> Outcome); 9] = [
        ("multiplicity one for maximal parabolics", &|| theorem_a(&tables)),
        ("restriction to GL_n", &|| theorem_gl(&tables)),
        ("three multiplicity formulas agree", &|| equivalences(&tables)),
        ("Borel negative control", &|| negative_control(&tables)),
        ("theta-invariance of X_{n,k} orbits", &geometric),
        ("two-sided parabolic orbit lemma", &key_lemma),
        ("Deligne filtration suite", &deligne),
        ("symmetric group strong Gelfand classification", &symmetric),
        ("character engine self-tests", &|| char_engine(&tables)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{name}] {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL [{name}] {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
