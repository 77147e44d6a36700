use num_bigint::BigInt;
use proptest::prelude::*;
use symrank_core::arith::{is_prime, ord2};
use symrank_core::gf2::*;
use symrank_core::{IntMatrix, IntVector, LatticeBasis, MatGroup};

fn poly(bits: &str) -> GF2Poly {
    GF2Poly::parse_bits(bits).unwrap()
}

/// Irreducibility by trial division against every polynomial of degree 1..=deg/2.
fn irreducible_by_trial(f: &GF2Poly) -> bool {
    let d = f.degree().unwrap();
    for m in 2u64..(1u64 << (d / 2 + 1)) {
        let g = GF2Poly::from_coeffs(&(0..64).map(|i| m >> i & 1 == 1).collect::<Vec<_>>());
        if g.degree().unwrap() >= 1 && g.degree().unwrap() <= d / 2 && f.rem(&g).is_zero() {
            return false;
        }
    }
    true
}

fn odd_primes(max: u64) -> Vec<u64> {
    (3..=max).filter(|&p| is_prime(p)).collect()
}

fn cyclic_perm(p: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(p, p);
    for j in 0..p {
        m.set((j + 1) % p, j, BigInt::from(1));
    }
    m
}

fn binary_vectors(p: usize) -> impl Iterator<Item = (IntVector, GF2Poly)> {
    (0u64..1 << p).map(move |m| {
        let bits: Vec<bool> = (0..p).map(|i| m >> i & 1 == 1).collect();
        let v = IntVector::from_i64(&bits.iter().map(|&b| b as i64).collect::<Vec<_>>());
        (v, GF2Poly::from_coeffs(&bits))
    })
}

#[test]
fn ord2_examples() {
    assert_eq!(ord2(3).unwrap(), 2);
    assert_eq!(ord2(5).unwrap(), 4);
    assert_eq!(ord2(7).unwrap(), 3);
    assert_eq!(ord2(23).unwrap(), 11);
    assert!(ord2(9).is_err());
    assert!(ord2(2).is_err());
}

#[test]
fn small_factorizations() {
    let f3 = factor_xp_minus_1(3).unwrap();
    assert_eq!(f3.factors, vec![poly("11"), poly("111")]);
    let f7 = factor_xp_minus_1(7).unwrap();
    assert_eq!(f7.factors[0], poly("11"));
    let mut rest = f7.factors[1..].to_vec();
    rest.sort();
    assert_eq!(rest, vec![poly("1101"), poly("1011")].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    assert_eq!(f7.cosets, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
    assert_eq!(factor_xp_minus_1(23).unwrap().count(), 3);
    assert!(factor_xp_minus_1(15).is_err());
}

#[test]
fn brute_force_degree_d_search_agrees() {
    for p in odd_primes(90) {
        let d = ord2(p).unwrap() as usize;
        if d > 12 {
            continue;
        }
        let target = GF2Poly::x_pow_plus_one(p as usize);
        let mut found = Vec::new();
        for m in (1u64 << d)..(1u64 << (d + 1)) {
            let g = GF2Poly::from_coeffs(&(0..=d).map(|i| m >> i & 1 == 1).collect::<Vec<_>>());
            if g.coeff(0) && target.rem(&g).is_zero() && irreducible_by_trial(&g) {
                found.push(g);
            }
        }
        let f = factor_xp_minus_1(p).unwrap();
        let mut ours = f.factors[1..].to_vec();
        ours.sort();
        found.sort();
        assert_eq!(ours, found, "p = {p}");
    }
}

#[test]
fn factorization_invariants_up_to_200() {
    for p in odd_primes(200) {
        let f = factor_xp_minus_1(p).unwrap();
        let d = ord2(p).unwrap();
        assert_eq!(f.product(), GF2Poly::x_pow_plus_one(p as usize), "p = {p}");
        assert_eq!(f.count() as u64, (p - 1) / d + 1);
        assert!(f.factors[1..].iter().all(|g| g.degree() == Some(d as usize)));
        let mut seen: Vec<u64> = f.cosets.iter().flatten().copied().collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..p).collect::<Vec<_>>());
    }
}

#[test]
fn labeling_follows_powers_of_a_root() {
    for p in [7u64, 17, 31, 43, 73] {
        let f = factor_xp_minus_1(p).unwrap();
        let f1 = &f.factors[1];
        for (i, c) in f.cosets.iter().enumerate().skip(1) {
            for &t in c {
                let zt = GF2Poly::monomial(t as usize).rem(f1);
                assert!(f.factors[i].compose_mod(&zt, f1).is_zero(), "p = {p}, t = {t}");
            }
        }
    }
}

#[test]
fn canonical_subspaces() {
    for p in [3u64, 5, 7, 11, 13] {
        let f = factor_xp_minus_1(p).unwrap();
        let n = p as usize;
        let k = f.count();
        assert_eq!(f.subspace(&[]).dim(), 0);
        let ones = f.subspace(&[0]);
        assert_eq!(ones.dim(), 1);
        assert!(ones.contains(&GF2Poly::all_ones(n)));
        let even = f.subspace(&(1..k).collect::<Vec<_>>());
        assert_eq!(even.dim(), n - 1);
        assert!(even.basis().iter().all(|v| v.weight() % 2 == 0));
        assert_eq!(f.subspace(&(0..k).collect::<Vec<_>>()).dim(), n);
    }
}

#[test]
fn subspaces_are_cyclic_and_dimensions_add() {
    for p in [7u64, 17, 31] {
        let n = p as usize;
        let f = factor_xp_minus_1(p).unwrap();
        let d = f.d as usize;
        let shift: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
        for (s, v) in cp_stable_subspaces(p, 1 << 12).unwrap() {
            let expect: usize = s.iter().map(|&i| if i == 0 { 1 } else { d }).sum();
            assert_eq!(v.dim(), expect);
            assert_eq!(v.permuted(&shift), v);
        }
    }
}

#[test]
fn four_subsets_when_two_is_primitive() {
    for p in [3u64, 5, 11, 13, 19, 29] {
        assert_eq!(ord2(p).unwrap(), p - 1);
        assert_eq!(cp_stable_subspaces(p, 1 << 20).unwrap().len(), 4);
    }
    assert_eq!(binary_sublattices(7, 1 << 20).unwrap().len(), 8);
}

#[test]
fn diag_generators_p3() {
    let ds = diag_generators(3).unwrap();
    assert_eq!(ds[0], IntMatrix::from_rows_i64(&[[-1, 0, 0], [0, -1, 0], [0, 0, -1]]));
    assert_eq!(ds[1], IntMatrix::from_rows_i64(&[[-1, 0, 0], [0, -1, 0], [0, 0, 1]]));
    let g = MatGroup::new(3, vec![ds[1].clone(), cyclic_perm(3)]).unwrap();
    assert_eq!(g.order(1000).unwrap(), 12u64.into());
    let diag: Vec<_> = g.closure(1000).unwrap().iter().filter(|m| is_diagonal(m)).cloned().collect();
    assert_eq!(diag.len(), 4);
    assert!(diag.iter().all(|m| m.det() == BigInt::from(1)));
}

fn is_diagonal(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j) == &BigInt::from(0)))
}

#[test]
fn diagonal_closure_matches_subspace() {
    let p = 7usize;
    let f = factor_xp_minus_1(7).unwrap();
    for (i, d) in diag_generators(7).unwrap().into_iter().enumerate() {
        let g = MatGroup::new(p, vec![d, cyclic_perm(p)]).unwrap();
        let elems = g.closure(1 << 16).unwrap();
        let patterns: Vec<GF2Poly> = elems
            .iter()
            .filter(|m| is_diagonal(m))
            .map(|m| GF2Poly::from_coeffs(&(0..p).map(|k| m.get(k, k) == &BigInt::from(-1)).collect::<Vec<_>>()))
            .collect();
        let space = f.subspace(&[i]);
        assert_eq!(patterns.len(), 1 << space.dim());
        assert!(patterns.iter().all(|v| space.contains(v)));
    }
}

#[test]
fn sublattice_examples() {
    let f = factor_xp_minus_1(3).unwrap();
    assert_eq!(f.binary_sublattice(&[1]), l_even(3));
    assert_eq!(f.binary_sublattice(&[0, 1]), LatticeBasis::full(3));
    assert_eq!(f.binary_sublattice(&[0]), l_one(3, true));
    assert_eq!(f.binary_sublattice(&[]), LatticeBasis::scaled(3, &BigInt::from(2)));
    assert_eq!(l_one(3, false).rank(), 1);
}

#[test]
fn mod2_reduction_matches_subspaces() {
    for p in [3u64, 5, 7, 13] {
        let n = p as usize;
        let f = factor_xp_minus_1(p).unwrap();
        for (s, l) in binary_sublattices(p, 1 << 12).unwrap() {
            let v = f.subspace(&s);
            assert_eq!(mod2_image(&l), v);
            if !s.is_empty() {
                assert!(l.is_primitive());
            }
            assert_eq!(l.rank(), n);
            // A binary vector lies in the lattice exactly when its pattern lies in the subspace.
            if n <= 7 {
                for (bv, bp) in binary_vectors(n) {
                    assert_eq!(l.member(&bv), v.contains(&bp));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_identity(a in proptest::collection::vec(any::<bool>(), 0..150),
                         b in proptest::collection::vec(any::<bool>(), 1..90)) {
        let a = GF2Poly::from_coeffs(&a);
        let b = GF2Poly::from_coeffs(&b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides(a in proptest::collection::vec(any::<bool>(), 1..120),
                   b in proptest::collection::vec(any::<bool>(), 1..120),
                   c in proptest::collection::vec(any::<bool>(), 1..40)) {
        let c = GF2Poly::from_coeffs(&c);
        prop_assume!(!c.is_zero());
        let a = GF2Poly::from_coeffs(&a).mul(&c);
        let b = GF2Poly::from_coeffs(&b).mul(&c);
        let g = a.gcd(&b);
        prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
        prop_assert!(g.rem(&c).is_zero());
    }

    #[test]
    fn bit_strings_round_trip(a in proptest::collection::vec(any::<bool>(), 0..200)) {
        let a = GF2Poly::from_coeffs(&a);
        prop_assert_eq!(GF2Poly::parse_bits(&a.bit_string()).unwrap(), a);
    }
}
