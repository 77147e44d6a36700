use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symrank_core::arith::{binomial, factorial};
use symrank_core::gf2::{binary_sublattices, diag_generators, factor_xp_minus_1, l_even, F2Subspace, GF2Poly};
use symrank_core::monomial::*;
use symrank_core::{IntVector, LatticeBasis, MatGroup};

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> MonomialElement {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    MonomialElement::new(signs, perm).unwrap()
}

fn binary(n: usize, m: u64) -> Vec<i64> {
    (0..n).map(|i| (m >> i & 1) as i64).collect()
}

/// Diagonal sign patterns of a closed matrix group, by direct filtering.
fn diagonal_patterns(g: &MatGroup) -> Vec<GF2Poly> {
    let mut out: Vec<GF2Poly> = g
        .closure(1 << 20)
        .unwrap()
        .iter()
        .filter_map(MonomialElement::from_matrix)
        .filter(|m| m.is_diagonal())
        .map(|m| m.sign_pattern())
        .collect();
    out.sort();
    out
}

#[test]
fn composition_matches_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=9);
        let a = random_element(&mut rng, n);
        let b = random_element(&mut rng, n);
        assert_eq!(a.compose(&b).to_matrix(), a.to_matrix().mul(&b.to_matrix()));
        assert_eq!(a.compose(&a.inverse()), MonomialElement::identity(n));
        assert_eq!(MonomialElement::from_matrix(&a.to_matrix()), Some(a.clone()));
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        assert_eq!(IntVector::from_i64(&a.apply(&v)), a.to_matrix().mul_vec(&IntVector::from_i64(&v)));
    }
}

#[test]
fn rejects_malformed() {
    assert!(MonomialElement::new(vec![1, 1], vec![0, 0]).is_err());
    assert!(MonomialElement::new(vec![1, 2], vec![0, 1]).is_err());
    assert!(MonomialElement::new(vec![1], vec![0, 1]).is_err());
}

#[test]
fn permutation_images() {
    let pi = MonomialGroup::full(3).project_pi(100).unwrap();
    assert_eq!(pi.order, BigInt::from(6));
    assert!(pi.has_n_cycle);
    let d = MonomialGroup::new(3, vec![MonomialElement::diagonal(vec![-1, 1, 1])]).unwrap();
    let pi = d.project_pi(100).unwrap();
    assert_eq!(pi.order, BigInt::from(1));
    assert!(!pi.has_n_cycle);
    let c = MonomialGroup::new(5, vec![MonomialElement::cycle(5), MonomialElement::minus_identity(5)]).unwrap();
    let pi = c.project_pi(100).unwrap();
    assert_eq!(pi.order, BigInt::from(5));
    assert!(pi.has_n_cycle);
    assert!(MonomialGroup::full(6).project_pi(100).is_err());
}

#[test]
fn orders_match_matrix_closure() {
    for n in 1..=4usize {
        let g = MonomialGroup::full(n);
        let expect = factorial(n as u64) << n;
        assert_eq!(g.order(1000).unwrap(), expect);
        assert_eq!(g.to_matgroup().order(1 << 16).unwrap(), expect);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..k).map(|_| random_element(&mut rng, n)).collect();
        let g = MonomialGroup::new(n, gens).unwrap();
        let m = g.to_matgroup();
        assert_eq!(g.order(1 << 10).unwrap(), m.order(1 << 16).unwrap());
        let ours = g.diagonal_subgroup(1 << 10).unwrap();
        assert_eq!(ours.elements().into_iter().collect::<std::collections::BTreeSet<_>>(),
                   diagonal_patterns(&m).into_iter().collect());
    }
}

#[test]
fn o2_examples() {
    let full = MonomialGroup::new(7, vec![MonomialElement::diagonal(vec![-1, 1, 1, 1, 1, 1, 1]), MonomialElement::cycle(7)]).unwrap();
    assert_eq!(full.o2_diagonal_part(1000).unwrap(), F2Subspace::full(7));
    let pm = MonomialGroup::new(7, vec![MonomialElement::cycle(7), MonomialElement::minus_identity(7)]).unwrap();
    let o2 = pm.o2_diagonal_part(1000).unwrap();
    assert_eq!(o2.dim(), 1);
    assert!(o2.contains(&GF2Poly::all_ones(7)));
    assert!(pm.contains_minus_identity(1000).unwrap());

    let f = factor_xp_minus_1(7).unwrap();
    for (i, d) in diag_generators(7).unwrap().iter().enumerate() {
        let g = MonomialGroup::new(7, vec![MonomialElement::cycle(7), MonomialElement::from_matrix(d).unwrap()]).unwrap();
        let o2 = g.o2_diagonal_part(1000).unwrap();
        assert_eq!(o2, f.subspace(&[i]));
        let mut els = o2.elements();
        els.sort();
        assert_eq!(els, diagonal_patterns(&g.to_matgroup()));
    }
    assert_eq!(f.subspace(&[1]).dim(), 3);

    assert!(MonomialGroup::full(4).o2_diagonal_part(1000).is_err());
    let no_cycle = MonomialGroup::new(5, vec![MonomialElement::minus_identity(5)]).unwrap();
    assert!(no_cycle.o2_diagonal_part(1000).is_err());
}

#[test]
fn orbit_formula_matches_bfs() {
    for p in [3usize, 5, 7] {
        let g = MonomialGroup::full(p);
        let pi_order = factorial(p as u64);
        for m in 0..1u64 << p {
            let v = binary(p, m);
            let iv = IntVector::from_i64(&v);
            let bfs = g.orbit(&v, 1 << 20).unwrap().len();
            let formula = full_monomial_orbit_size(&iv);
            assert_eq!(formula, BigInt::from(bfs));
            let s = iv.support();
            assert_eq!(formula, binomial(p as u64, s as u64) << s);
            assert!(monomial_orbit_bound(&iv, &pi_order).unwrap() >= formula);
        }
    }
    assert!(monomial_orbit_bound(&IntVector::from_i64(&[2, 0]), &BigInt::from(2)).is_err());
}

#[test]
fn spec_orbit_sizes() {
    for p in [7usize, 11, 13] {
        let e1 = IntVector::unit(p, 0);
        let e12 = e1.add(&IntVector::unit(p, 1));
        let pp = BigInt::from(p);
        assert_eq!(full_monomial_orbit_size(&e1), BigInt::from(2 * p));
        assert_eq!(full_monomial_orbit_size(&e12), BigInt::from(2) * &pp * (&pp - 1));
        assert_eq!(full_monomial_orbit_size(&IntVector::ones(p)), BigInt::from(1) << p);
    }
}

#[test]
fn prop515_reports() {
    let r = prop515_check(7, 7).unwrap();
    let sizes: Vec<BigInt> = r.rows.iter().map(|x| x.orbit_size.clone()).collect();
    assert_eq!(sizes, vec![BigInt::from(14), BigInt::from(84), BigInt::from(128)]);
    assert_eq!(r.rows.iter().map(|x| x.bfs_size).collect::<Vec<_>>(), vec![Some(14), Some(84), Some(128)]);
    assert!(r.rows.iter().all(|x| x.spans));
    assert!(r.inequality_holds && r.all_within_2p);
    let r = prop515_check(11, 0).unwrap();
    let sizes: Vec<BigInt> = r.rows.iter().map(|x| x.orbit_size.clone()).collect();
    assert_eq!(sizes, vec![BigInt::from(22), BigInt::from(220), BigInt::from(2048)]);
    assert!(r.rows.iter().all(|x| x.spans && x.bfs_size.is_none()));
    assert!(!prop515_check(5, 0).unwrap().inequality_holds);
}

#[test]
fn four_subspace_hypothesis_matches_subspace_count() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let count = factor_xp_minus_1(p).unwrap().subsets(1 << 20).unwrap().len();
        let h = four_subspace_hypothesis(p, PiKind::Cyclic).unwrap();
        assert_eq!(h == Hypothesis::Holds, count == 4, "p = {p}");
    }
    assert_eq!(four_subspace_hypothesis(7, PiKind::Symmetric).unwrap(), Hypothesis::Holds);
    assert_eq!(four_subspace_hypothesis(7, PiKind::Other).unwrap(), Hypothesis::Unverified);
}

#[test]
fn support_reduce_examples() {
    let le = l_even(7);
    let start = IntVector::from_i64(&[1, 1, 1, 1, 1, 1, 0]);
    let r = support_reduce_from(&le, &start).unwrap();
    assert!(r.support <= 4 && le.member(&r.vector) && r.vector.is_binary());
    let z = support_reduce(&LatticeBasis::full(7)).unwrap();
    assert_eq!(z.support, 1);
    let f = factor_xp_minus_1(7).unwrap();
    let l1 = f.binary_sublattice(&[1]);
    let r = support_reduce(&l1).unwrap();
    assert!(r.support <= 4 && l1.member(&r.vector));
    assert!(support_reduce(&f.binary_sublattice(&[0])).is_err());
    assert!(support_reduce(&LatticeBasis::scaled(7, &BigInt::from(2))).is_err());
}

#[test]
fn support_reduce_on_all_binary_sublattices() {
    for p in [3u64, 5, 7, 11, 13] {
        let n = p as usize;
        for (s, l) in binary_sublattices(p, 1 << 12).unwrap() {
            if s.is_empty() || s == [0] {
                continue;
            }
            let r = support_reduce(&l).unwrap();
            assert!(r.vector.is_binary() && !r.vector.is_zero());
            assert!(l.member(&r.vector));
            assert!(r.support <= 2 * n / 3, "p = {p}, S = {s:?}");
        }
    }
}

#[test]
fn classify_table() {
    let rows = classify(7, 1 << 10).unwrap();
    assert_eq!(rows.len(), 8);
    let orders: Vec<BigInt> = rows.iter().map(|r| r.diagonal_order.clone()).collect();
    assert_eq!(orders.iter().max().unwrap(), &BigInt::from(128));
    assert!(rows.iter().all(|r| r.sublattice.rank() == 7));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_orbit_formula(v in proptest::collection::vec(-2i64..=2, 1..=5)) {
        let g = MonomialGroup::full(v.len());
        let bfs = g.orbit(&v, 1 << 20).unwrap().len();
        prop_assert_eq!(full_monomial_orbit_size(&IntVector::from_i64(&v)), BigInt::from(bfs));
    }
}
