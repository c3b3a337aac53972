use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use repcheck_core::chartab::{choose_prime_after, default_gl_prime, dixon_table, gl_exponent, levi_table, DirectTables};
use repcheck_core::ffalg::{char_poly, field, invariant_factors, MatFq, PolyFq};
use repcheck_core::geometry::{deligne_filtration, nilpotent_representatives};
use repcheck_core::groups::{gl_order, parabolic, ConjClassTable, FiniteGroup, GroupSpec, DEFAULT_ORDER_BOUND};
use repcheck_core::jacquet::{JacquetSetup, MultiplicityReport};

fn gl(n: usize, q: u32) -> &'static (FiniteGroup, ConjClassTable) {
    static GL32: OnceLock<(FiniteGroup, ConjClassTable)> = OnceLock::new();
    static GL23: OnceLock<(FiniteGroup, ConjClassTable)> = OnceLock::new();
    static GL42: OnceLock<(FiniteGroup, ConjClassTable)> = OnceLock::new();
    let cell = match (n, q) {
        (3, 2) => &GL32,
        (2, 3) => &GL23,
        (4, 2) => &GL42,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        let g = FiniteGroup::new(GroupSpec::gl(n, q), DEFAULT_ORDER_BOUND).unwrap();
        let ct = ConjClassTable::build(&g);
        (g, ct)
    })
}

fn det_at(g: &MatFq, t: u8) -> u8 {
    let f = g.field();
    let n = g.rows();
    MatFq::identity(f, n).scale(t).sub(g).det()
}

fn product(ps: &[PolyFq]) -> PolyFq {
    let f = ps[0].field();
    ps.iter().fold(PolyFq::one(f), |acc, p| acc.mul(p))
}

/// `(g_degree, m_degree, multiplicity)` triples, independent of row and column order.
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn char_poly_is_det_of_t_minus_g(entries in prop::collection::vec(0u8..3, 9)) {
        let f = field(3).unwrap();
        let g = MatFq::from_vec(f, 3, 3, entries);
        let cp = char_poly(&g);
        prop_assert_eq!(cp.degree(), Some(3));
        for t in 0..3 {
            prop_assert_eq!(cp.eval(t), det_at(&g, t));
        }
    }

    #[test]
    fn invariant_factors_multiply_to_char_poly(entries in prop::collection::vec(0u8..2, 16)) {
        let f = field(2).unwrap();
        let g = MatFq::from_vec(f, 4, 4, entries);
        let inv = invariant_factors(&g);
        prop_assert_eq!(product(&inv), char_poly(&g));
        for w in inv.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn invariant_factors_are_similarity_invariants(gi in 0usize..168, hi in 0usize..168) {
        let (group, _) = gl(3, 2);
        let (g, h) = (group.element(gi), group.element(hi));
        let conj = h.mul(g).mul(&h.inverse().unwrap());
        prop_assert_eq!(invariant_factors(&conj), invariant_factors(g));
        prop_assert_eq!(invariant_factors(&g.transpose()), invariant_factors(g));
    }

    #[test]
    fn identify_respects_transpose_and_conjugation(gi in 0usize..48, hi in 0usize..48) {
        let (group, ct) = gl(2, 3);
        let (g, h) = (group.element(gi), group.element(hi));
        let c = ct.identify(g).unwrap();
        prop_assert_eq!(ct.identify(&g.transpose()), Some(c));
        prop_assert_eq!(ct.identify(&h.mul(g).mul(&h.inverse().unwrap())), Some(c));
        prop_assert!(ct.rep(c).order() == g.order());
    }

    #[test]
    fn levi_part_is_a_homomorphism(ai in 0usize..10_000, bi in 0usize..10_000, comp in prop::sample::select(vec![vec![1usize, 1, 1], vec![1, 2], vec![2, 1]])) {
        let pd = parabolic(3, 3, &comp).unwrap();
        let p = pd.enumerate_p(DEFAULT_ORDER_BOUND).unwrap();
        let (a, b) = (&p[ai % p.len()], &p[bi % p.len()]);
        prop_assert!(pd.in_p(&a.mul(b)));
        prop_assert_eq!(pd.levi_part(&a.mul(b)), pd.levi_part(a).mul(&pd.levi_part(b)));
        prop_assert!(pd.in_m(&pd.levi_part(a)));
    }

    #[test]
    fn deligne_filtration_is_equivariant(ai in 0usize..64, hi in 0usize..20_160) {
        let reps = nilpotent_representatives(2, 4).unwrap();
        let (group, _) = gl(4, 2);
        let h = group.element(hi % group.elements().len());
        let hinv = h.inverse().unwrap();
        let a = reps[ai % reps.len()].clone();
        let conj = h.mul(&a).mul(&hinv);
        let (d, e) = (deligne_filtration(&a).unwrap(), deligne_filtration(&conj).unwrap());
        prop_assert!(e.verify());
        for i in d.lowest()..=d.s as i64 {
            prop_assert_eq!(d.d(i).image(h), e.d(i));
        }
    }
}

#[test]
fn multiplicities_agree_at_two_primes() {
    for (q, comp) in [(2u32, vec![1usize, 2]), (2, vec![1, 1, 1]), (3, vec![1, 1])] {
        let n: usize = comp.iter().sum();
        let first = default_gl_prime(n, q).unwrap();
        let second = choose_prime_after(gl_exponent(n, q), gl_order(n, q) as u64, first.p).unwrap();
        assert_ne!(first.p, second.p);
        let a = JacquetSetup::new(q, &comp, &DirectTables, Some(first)).unwrap().jacquet().unwrap();
        let b = JacquetSetup::new(q, &comp, &DirectTables, Some(second)).unwrap().jacquet().unwrap();
        assert_eq!(entry_multiset(&a), entry_multiset(&b), "q={q} {comp:?}");
        assert_eq!(a.max_multiplicity, b.max_multiplicity);
    }
}

#[test]
fn levi_product_table_matches_direct_dixon() {
    for (q, comp) in [(2u32, vec![1usize, 2]), (3, vec![1, 1]), (2, vec![2, 1])] {
        let n: usize = comp.iter().sum();
        let prime = default_gl_prime(n, q).unwrap();
        let product = levi_table(q, &comp, &DirectTables, prime).unwrap();
        let m = FiniteGroup::new(GroupSpec::levi(q, &comp), DEFAULT_ORDER_BOUND).unwrap();
        let classes = Arc::new(ConjClassTable::build(&m));
        let direct = dixon_table(&m, classes, prime).unwrap();
        assert_eq!(product.classes().reps(), direct.classes().reps());
        let mut x = product.values().to_vec();
        let mut y = direct.values().to_vec();
        x.sort();
        y.sort();
        assert_eq!(x, y, "q={q} {comp:?}");
    }
}
