use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use symrank_core::{hnf, snf, Index, IntMatrix, IntVector, LatticeBasis};

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows_i64(rows)
}

fn v(xs: &[i64]) -> IntVector {
    IntVector::from_i64(xs)
}

// Laplace expansion, independent of the Bareiss routine.
fn det_laplace(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &a[0][j] * det_laplace(&minor);
        if j % 2 == 0 {
            acc += t
        } else {
            acc -= t
        }
    }
    acc
}

fn rows_of(mat: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..mat.rows()).map(|i| mat.row(i).to_vec()).collect()
}

// gcd of all k x k minors
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for last in k - 1..n {
            for mut s in subsets(last, k - 1) {
                s.push(last);
                out.push(s);
            }
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            let sub: Vec<Vec<BigInt>> =
                rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
            g = g.gcd(&det_laplace(&sub));
        }
    }
    g
}

#[test]
fn hnf_examples() {
    let l = hnf(&m(&[&[2, 0], &[0, 3]]));
    assert_eq!(l.basis(), m(&[&[2, 0], &[0, 3]]));
    let l = hnf(&m(&[&[0, 1], &[1, 0]]));
    assert_eq!(l.basis(), IntMatrix::identity(2));
    let l = hnf(&m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
    assert_eq!(l.rank(), 3);
    assert_eq!(l.index_in(&LatticeBasis::full(3)).unwrap(), Index::Finite(2.into()));
    assert_eq!(hnf(&IntMatrix::zero(2, 3)).rank(), 0);
}

#[test]
fn index_by_coset_count() {
    // 2Z^3 lies inside span{(1,1,0),(0,1,1),(1,0,1)}; count residues mod 2 that are members
    let b = m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    let inv = b.transpose().inverse_rational().unwrap();
    let mut inside = 0;
    for x in 0..8u32 {
        let w: Vec<BigInt> = (0..3).map(|i| BigInt::from((x >> i) & 1)).collect();
        // coefficients c with B^T c = w
        let integral = inv.iter().all(|r| {
            let s: num_rational::BigRational = r
                .iter()
                .zip(&w)
                .map(|(a, b)| a * num_rational::BigRational::from_integer(b.clone()))
                .sum();
            s.is_integer()
        });
        if integral {
            inside += 1;
        }
    }
    assert_eq!(8 / inside, 2);
}

#[test]
fn membership_examples() {
    let l = hnf(&m(&[&[2, 0], &[0, 3]]));
    assert!(l.member(&v(&[2, 0])));
    assert!(!l.member(&v(&[1, 0])));
    // A_2 root lattice in weight coordinates; alpha_1 = 2 l1 - l2
    let root = hnf(&m(&[&[2, -1], &[-1, 2]]));
    assert!(root.member(&v(&[2, -1])));
    assert!(!root.member(&v(&[1, 0])));
    assert_eq!(root.index_in(&LatticeBasis::full(2)).unwrap(), Index::Finite(3.into()));
}

#[test]
fn index_examples() {
    let z = LatticeBasis::full(4);
    assert_eq!(z.index_in(&z).unwrap(), Index::Finite(1.into()));
    let two = LatticeBasis::scaled(2, &BigInt::from(2));
    assert_eq!(two.index_in(&LatticeBasis::full(2)).unwrap(), Index::Finite(4.into()));
    let line = hnf(&m(&[&[1, 0]]));
    assert_eq!(line.index_in(&LatticeBasis::full(2)).unwrap(), Index::Infinite);
    assert!(LatticeBasis::full(2).index_in(&two).is_err());
}

#[test]
fn primitivity() {
    assert!(!LatticeBasis::scaled(2, &BigInt::from(2)).is_primitive());
    let le = hnf(&m(&[&[1, 1, 0], &[0, 1, 1], &[2, 0, 0]]));
    assert!(le.is_primitive());
    assert!(LatticeBasis::full(5).is_primitive());
    assert!(!LatticeBasis::zero(3).is_primitive());
}

#[test]
fn snf_examples() {
    let i3 = IntMatrix::identity(3);
    assert_eq!(snf(&i3).d, i3);
    let a2 = m(&[&[2, -1], &[-1, 2]]);
    assert_eq!(snf(&a2).diagonal(), vec![BigInt::from(1), BigInt::from(3)]);
    let b2 = m(&[&[2, -2], &[-1, 2]]);
    assert_eq!(snf(&b2).diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
}

#[test]
fn intersection_of_coordinate_lattices() {
    let a = hnf(&m(&[&[2, 0], &[0, 1]]));
    let b = hnf(&m(&[&[1, 0], &[0, 3]]));
    assert_eq!(a.intersect(&b), hnf(&m(&[&[2, 0], &[0, 3]])));
    let d = hnf(&m(&[&[1, 1]]));
    let e = hnf(&m(&[&[1, -1]]));
    assert_eq!(d.intersect(&e).rank(), 0);
    let f = hnf(&m(&[&[2, 0]]));
    assert_eq!(f.intersect(&LatticeBasis::full(2)), f);
}

#[test]
fn json_round_trip() {
    let a = m(&[&[1, -2], &[3, 4]]);
    let s = serde_json::to_string(&a).unwrap();
    assert_eq!(s, r#"{"rows":2,"cols":2,"entries":["1","-2","3","4"]}"#);
    let b: IntMatrix = serde_json::from_str(&s).unwrap();
    assert_eq!(a, b);
    let c: IntMatrix = serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[5,"-7"]}"#).unwrap();
    assert_eq!(c, m(&[&[5, -7]]));
    let big: IntMatrix =
        serde_json::from_str(r#"{"rows":1,"cols":1,"entries":["123456789012345678901234567890"]}"#).unwrap();
    assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890");
    let w: IntVector = serde_json::from_str(r#"{"rows":3,"cols":1,"entries":[1,2,3]}"#).unwrap();
    assert_eq!(w, v(&[1, 2, 3]));
    assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":2,"cols":2,"entries":[1]}"#).is_err());
}

#[test]
fn inverse_and_det() {
    let a = m(&[&[2, 1], &[1, 1]]);
    assert_eq!(a.det(), BigInt::one());
    let inv = a.inverse().unwrap();
    assert_eq!(a.mul(&inv), IntMatrix::identity(2));
    assert!(m(&[&[2, 0], &[0, 1]]).inverse().is_none());
}

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |xs| {
            let rows: Vec<Vec<i64>> = xs.chunks(c).map(|ch| ch.to_vec()).collect();
            IntMatrix::from_rows_i64(&rows)
        })
    })
}

fn square_matrix(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |xs| {
            let rows: Vec<Vec<i64>> = xs.chunks(n).map(|ch| ch.to_vec()).collect();
            IntMatrix::from_rows_i64(&rows)
        })
    })
}

fn is_hnf(l: &LatticeBasis) -> bool {
    let b = l.basis();
    let piv = l.pivots();
    for i in 0..b.rows() {
        let c = piv[i];
        if !b.get(i, c).is_positive() || (0..c).any(|j| !b.get(i, j).is_zero()) {
            return false;
        }
        if i > 0 && piv[i - 1] >= c {
            return false;
        }
        for k in 0..i {
            let x = b.get(k, c);
            if x.is_negative() || x >= b.get(i, c) {
                return false;
            }
        }
    }
    true
}

proptest! {
    #[test]
    fn hnf_is_idempotent_and_canonical(a in small_matrix(5, 4)) {
        let l = hnf(&a);
        prop_assert!(is_hnf(&l));
        prop_assert_eq!(hnf(&l.basis()), l.clone());
        prop_assert_eq!(l.rank(), a.rank());
        prop_assert_eq!(l.rank(), {
            // rank from the determinantal divisors
            (1..=a.rows().min(a.cols())).take_while(|&k| !determinantal_divisor(&a, k).is_zero()).count()
        });
    }

    #[test]
    fn hnf_preserves_span(a in small_matrix(5, 4)) {
        let l = hnf(&a);
        for r in a.row_vectors() {
            prop_assert!(l.member(&r));
        }
        let back = LatticeBasis::from_vectors(a.cols(), &a.row_vectors());
        for r in l.basis_vectors() {
            prop_assert!(back.member(&r));
            let c = l.coordinates(&r).unwrap();
            prop_assert_eq!(l.combine(c.entries()), r);
        }
    }

    #[test]
    fn snf_round_trip(a in square_matrix(4)) {
        let s = snf(&a);
        prop_assert_eq!(s.p.mul(&a).mul(&s.q), s.d.clone());
        prop_assert!(s.p.det().abs().is_one());
        prop_assert!(s.q.det().abs().is_one());
        let d = s.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j { prop_assert!(s.d.get(i, j).is_zero()); }
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(d.iter().product::<BigInt>(), a.det().abs());
        // D_11 * ... * D_kk equals the k-th determinantal divisor
        let mut acc = BigInt::one();
        for (k, x) in d.iter().enumerate() {
            acc *= x;
            prop_assert_eq!(acc.clone(), determinantal_divisor(&a, k + 1));
        }
    }

    #[test]
    fn snf_rectangular(a in small_matrix(4, 4)) {
        let s = snf(&a);
        prop_assert_eq!(s.p.mul(&a).mul(&s.q), s.d);
    }

    #[test]
    fn det_matches_laplace(a in square_matrix(5)) {
        prop_assert_eq!(a.det(), det_laplace(&rows_of(&a)));
    }

    #[test]
    fn index_multiplicative(a in square_matrix(4), b in square_matrix(4)) {
        let n = a.rows();
        prop_assume!(b.rows() == n && !a.det().is_zero() && !b.det().is_zero());
        // L'' = span(b*a rows) inside L' = span(a rows) inside Z^n
        let l1 = hnf(&a);
        let l2 = hnf(&b.mul(&a));
        let z = LatticeBasis::full(n);
        let (Index::Finite(i21), Index::Finite(i1), Index::Finite(i2)) =
            (l2.index_in(&l1).unwrap(), l1.index_in(&z).unwrap(), l2.index_in(&z).unwrap())
        else { panic!("finite") };
        prop_assert_eq!(i2.clone(), &i21 * &i1);
        prop_assert_eq!(i1, a.det().abs());
        prop_assert_eq!(i2, (b.det() * a.det()).abs());
    }

    #[test]
    fn intersection_is_largest_common_sublattice(a in small_matrix(3, 3), b in small_matrix(3, 3), x in prop::collection::vec(-8i64..=8, 3)) {
        prop_assume!(a.cols() == b.cols());
        let (la, lb) = (hnf(&a), hnf(&b));
        let i = la.intersect(&lb);
        prop_assert!(la.contains_lattice(&i) && lb.contains_lattice(&i));
        let w = IntVector::from_i64(&x[..a.cols()]);
        prop_assert_eq!(i.member(&w), la.member(&w) && lb.member(&w));
        // scaled members of both must land in the intersection
        let s = la.sum(&lb);
        prop_assert!(s.contains_lattice(&la) && s.contains_lattice(&lb));
    }

    #[test]
    fn inverse_round_trip(a in square_matrix(4)) {
        if a.is_unimodular() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv), IntMatrix::identity(a.rows()));
        } else {
            prop_assert!(a.inverse().is_none());
        }
    }
}

proptest! {
    #[test]
    fn rank_of_low_rank_products(a in small_matrix(5, 2), b in small_matrix(2, 5)) {
        prop_assume!(a.cols() == b.rows());
        let p = a.mul(&b);
        let dd = (1..=p.rows().min(p.cols())).take_while(|&k| !determinantal_divisor(&p, k).is_zero()).count();
        prop_assert_eq!(p.rank(), dd);
        prop_assert_eq!(hnf(&p).rank(), dd);
    }
}
