//! Signed permutation matrices, stored as (signs, permutation).

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{factorial, ord2};
use crate::gf2::{factor_xp_minus_1, F2Subspace, GF2Poly};
use crate::linalg::{IntMatrix, IntVector, LatticeBasis};
use crate::matgroup::MatGroup;
use crate::{Error, Result};

/// The matrix with entry `signs[perm[j]]` at `(perm[j], j)`, so `(g v)[perm[j]] = signs[perm[j]] * v[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialElement {
    pub signs: Vec<i8>,
    pub perm: Vec<usize>,
}

impl MonomialElement {
    pub fn new(signs: Vec<i8>, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: signs.len() });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::MalformedMatrix("signs must be 1 or -1".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::MalformedMatrix("not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(MonomialElement { signs, perm })
    }

    pub fn identity(n: usize) -> Self {
        MonomialElement { signs: vec![1; n], perm: (0..n).collect() }
    }

    pub fn diagonal(signs: Vec<i8>) -> Self {
        let n = signs.len();
        MonomialElement { signs, perm: (0..n).collect() }
    }

    pub fn permutation(perm: Vec<usize>) -> Self {
        MonomialElement { signs: vec![1; perm.len()], perm }
    }

    /// j -> j + 1 mod n.
    pub fn cycle(n: usize) -> Self {
        Self::permutation((0..n).map(|j| (j + 1) % n).collect())
    }

    pub fn minus_identity(n: usize) -> Self {
        Self::diagonal(vec![-1; n])
    }

    /// Reads a ±1 monomial matrix.
    pub fn from_matrix(m: &IntMatrix) -> Option<Self> {
        let n = m.rows();
        if m.cols() != n {
            return None;
        }
        let mut signs = vec![0i8; n];
        let mut perm = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let e = m.get(i, j);
                if e.is_one() || *e == BigInt::from(-1) {
                    if perm[j] != usize::MAX {
                        return None;
                    }
                    perm[j] = i;
                    signs[i] = if e.is_one() { 1 } else { -1 };
                } else if *e != BigInt::from(0) {
                    return None;
                }
            }
        }
        Self::new(signs, perm).ok()
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zero(n, n);
        for j in 0..n {
            let i = self.perm[j];
            m.set(i, j, BigInt::from(self.signs[i]));
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &MonomialElement) -> MonomialElement {
        let n = self.dim();
        let perm: Vec<usize> = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let mut signs = vec![1i8; n];
        for j in 0..n {
            signs[perm[j]] = self.signs[perm[j]] * other.signs[other.perm[j]];
        }
        MonomialElement { signs, perm }
    }

    pub fn inverse(&self) -> MonomialElement {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[j] = self.signs[self.perm[j]];
        }
        MonomialElement { signs, perm }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut w = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            let i = self.perm[j];
            w[i] = self.signs[i] as i64 * x;
        }
        w
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
    }

    /// Positions carrying -1, as a vector over GF(2).
    pub fn sign_pattern(&self) -> GF2Poly {
        GF2Poly::from_coeffs(&self.signs.iter().map(|&s| s < 0).collect::<Vec<_>>())
    }
}

fn is_full_cycle(p: &[usize]) -> bool {
    let n = p.len();
    let mut x = 0;
    for k in 1..=n {
        x = p[x];
        if x == 0 {
            return k == n;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct PiImage {
    pub generators: Vec<Vec<usize>>,
    #[serde(with = "crate::bigstr")]
    pub order: BigInt,
    pub has_n_cycle: bool,
}

#[derive(Clone, Debug)]
pub struct MonomialGroup {
    n: usize,
    generators: Vec<MonomialElement>,
}

impl MonomialGroup {
    pub fn new(n: usize, generators: Vec<MonomialElement>) -> Result<Self> {
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.dim() });
            }
        }
        Ok(MonomialGroup { n, generators })
    }

    /// Mon_n(Z): a sign change, a transposition and an n-cycle.
    pub fn full(n: usize) -> Self {
        let mut flip = vec![1i8; n];
        flip[0] = -1;
        let mut gens = vec![MonomialElement::diagonal(flip), MonomialElement::cycle(n)];
        if n > 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(MonomialElement::permutation(t));
        }
        MonomialGroup { n, generators: gens }
    }

    /// Accepts a matrix group whose generators are all signed permutations.
    pub fn from_matgroup(g: &MatGroup) -> Option<Self> {
        let gens = g.generators().iter().map(MonomialElement::from_matrix).collect::<Option<Vec<_>>>()?;
        Some(MonomialGroup { n: g.dim(), generators: gens })
    }

    pub fn to_matgroup(&self) -> MatGroup {
        MatGroup::new(self.n, self.generators.iter().map(|g| g.to_matrix()).collect())
            .expect("signed permutations are unimodular")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MonomialElement] {
        &self.generators
    }

    /// Closure of the permutation parts, each with one element of G lying over it.
    fn transversal(&self, cap: usize) -> Result<(Vec<Vec<usize>>, HashMap<Vec<usize>, MonomialElement>)> {
        let id = MonomialElement::identity(self.n);
        let mut reps = HashMap::new();
        let mut order = vec![id.perm.clone()];
        reps.insert(id.perm.clone(), id);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let cur = reps[&order[k]].clone();
            for g in &self.generators {
                let x = g.compose(&cur);
                if !reps.contains_key(&x.perm) {
                    if order.len() >= cap {
                        return Err(Error::CapExceeded { what: "permutation image", cap });
                    }
                    order.push(x.perm.clone());
                    queue.push_back(order.len() - 1);
                    reps.insert(x.perm.clone(), x);
                }
            }
        }
        Ok((order, reps))
    }

    pub fn project_pi(&self, cap: usize) -> Result<PiImage> {
        let (elems, _) = self.transversal(cap)?;
        Ok(PiImage {
            generators: self.generators.iter().map(|g| g.perm.clone()).collect(),
            order: BigInt::from(elems.len()),
            has_n_cycle: elems.iter().any(|p| is_full_cycle(p)),
        })
    }

    /// Sign patterns of the diagonal subgroup G ∩ D_n, spanned by Schreier generators.
    pub fn diagonal_subgroup(&self, cap: usize) -> Result<F2Subspace> {
        let (_, reps) = self.transversal(cap)?;
        let mut space = F2Subspace::zero(self.n);
        for t in reps.values() {
            for g in &self.generators {
                let x = g.compose(t);
                let back = reps[&x.perm].inverse().compose(&x);
                debug_assert!(back.is_diagonal());
                space.insert(back.sign_pattern());
            }
        }
        Ok(space)
    }

    /// O_2(G) as a sign subspace, for n odd and π(G) containing an n-cycle.
    pub fn o2_diagonal_part(&self, cap: usize) -> Result<F2Subspace> {
        if self.n % 2 == 0 {
            return Err(Error::HypothesisNotMet(format!("n = {} is even", self.n)));
        }
        if !self.project_pi(cap)?.has_n_cycle {
            return Err(Error::HypothesisNotMet("permutation image has no n-cycle".into()));
        }
        self.diagonal_subgroup(cap)
    }

    pub fn order(&self, cap: usize) -> Result<BigInt> {
        let pi = self.project_pi(cap)?;
        Ok(pi.order << self.diagonal_subgroup(cap)?.dim())
    }

    pub fn contains_minus_identity(&self, cap: usize) -> Result<bool> {
        Ok(self.diagonal_subgroup(cap)?.contains(&GF2Poly::all_ones(self.n)))
    }

    /// Orbit by breadth-first search on the structural action.
    pub fn orbit(&self, v: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::from([v.to_vec()]);
        let mut out = vec![v.to_vec()];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let w = g.apply(&out[k]);
                if !seen.contains(&w) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded { what: "orbit elements", cap });
                    }
                    seen.insert(w.clone());
                    out.push(w);
                }
            }
            k += 1;
        }
        out.sort();
        Ok(out)
    }

    /// Smallest G-stable lattice containing `v`.
    pub fn orbit_span(&self, v: &IntVector) -> LatticeBasis {
        let mut l = LatticeBasis::from_vectors(self.n, [v]);
        loop {
            let mut grew = false;
            for b in l.basis_vectors() {
                for g in &self.generators {
                    grew |= l.insert(&g.to_matrix().mul_vec(&b));
                }
            }
            if !grew {
                return l;
            }
        }
    }
}

/// |Mon_n(Z) v| = 2^(nonzero entries) * n! / prod over distinct |v_i| of (multiplicity)!.
pub fn full_monomial_orbit_size(v: &IntVector) -> BigInt {
    let n = v.dim();
    let mut mult: HashMap<BigInt, u64> = HashMap::new();
    for x in v.entries() {
        *mult.entry(x.magnitude().clone().into()).or_default() += 1;
    }
    let denom = mult.values().fold(BigInt::one(), |a, &m| a * factorial(m));
    let nonzero = v.support();
    (factorial(n as u64) / denom) << nonzero
}

/// 2^|supp v| times the order (or π-orbit size) of the permutation image.
pub fn monomial_orbit_bound(v: &IntVector, pi_size: &BigInt) -> Result<BigInt> {
    if !v.is_binary() {
        return Err(Error::HypothesisNotMet("vector is not binary".into()));
    }
    Ok(pi_size << v.support())
}

fn binary_of(p: &GF2Poly, n: usize) -> IntVector {
    IntVector::from_i64(&(0..n).map(|i| p.coeff(i) as i64).collect::<Vec<_>>())
}

fn pattern_of(v: &IntVector) -> GF2Poly {
    GF2Poly::from_coeffs(&v.entries().iter().map(|x| x.bit(0)).collect::<Vec<_>>())
}

fn cyclic(v: &GF2Poly, n: usize, k: usize) -> GF2Poly {
    GF2Poly::from_exponents(&v.exponents().iter().map(|&e| (e + k) % n).collect::<Vec<_>>())
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReduction {
    pub vector: IntVector,
    pub support: usize,
    pub bound: usize,
    pub steps: usize,
}

/// Binary vector of small support in a lattice containing 2Z^n and stable under the cyclic shift.
///
/// Starting from the binary reduction of a basis vector, repeatedly replaces v by
/// v + σ^k v - 2 (overlap), i.e. the symmetric difference of supports, taking the least
/// shift k that shrinks the support.
pub fn support_reduce(l: &LatticeBasis) -> Result<SupportReduction> {
    let n = l.ambient_dim();
    check_reducible(l)?;
    let ones = GF2Poly::all_ones(n);
    let start = l
        .basis_vectors()
        .iter()
        .map(pattern_of)
        .filter(|p| !p.is_zero() && *p != ones)
        .min_by_key(|p| (p.weight(), p.clone()))
        .expect("mod-2 image outside {0, 1}");
    reduce_from(l, start)
}

/// As [`support_reduce`], from a given binary member.
pub fn support_reduce_from(l: &LatticeBasis, v: &IntVector) -> Result<SupportReduction> {
    check_reducible(l)?;
    if !v.is_binary() || v.is_zero() || !l.member(v) {
        return Err(Error::HypothesisNotMet("start must be a nonzero binary member".into()));
    }
    reduce_from(l, pattern_of(v))
}

fn check_reducible(l: &LatticeBasis) -> Result<()> {
    let n = l.ambient_dim();
    if !l.contains_lattice(&LatticeBasis::scaled(n, &BigInt::from(2))) {
        return Err(Error::HypothesisNotMet("lattice does not contain 2Z^n".into()));
    }
    let shift = MonomialElement::cycle(n).to_matrix();
    if l.basis_vectors().iter().any(|b| !l.member(&shift.mul_vec(b))) {
        return Err(Error::HypothesisNotMet("lattice is not stable under the cyclic shift".into()));
    }
    let img: Vec<GF2Poly> = l.basis_vectors().iter().map(pattern_of).collect();
    let ones = GF2Poly::all_ones(n);
    if img.iter().all(|p| p.is_zero() || *p == ones) {
        return Err(Error::HypothesisNotMet("lattice reduces to 0 or {0, 1} mod 2".into()));
    }
    Ok(())
}

fn reduce_from(l: &LatticeBasis, mut v: GF2Poly) -> Result<SupportReduction> {
    let n = l.ambient_dim();
    let bound = 2 * n / 3;
    let mut steps = 0;
    loop {
        let w = v.weight();
        let next = (1..n).map(|k| v.add(&cyclic(&v, n, k))).find(|u| !u.is_zero() && u.weight() < w);
        match next {
            Some(u) => {
                v = u;
                steps += 1;
                if steps > n {
                    return Err(Error::HypothesisNotMet("support reduction did not converge".into()));
                }
            }
            None => break,
        }
    }
    let vector = binary_of(&v, n);
    assert!(l.member(&vector), "reduced vector left the lattice");
    let support = v.weight();
    if support > bound {
        return Err(Error::HypothesisNotMet(format!("support {support} exceeds {bound}")));
    }
    Ok(SupportReduction { vector, support, bound, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PiKind {
    Alternating,
    Symmetric,
    Cyclic,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Holds,
    Fails,
    Unverified,
}

/// Whether F_2^p has only the four subspaces 0, {0,1}, V_E, F_2^p stable under π(G).
pub fn four_subspace_hypothesis(p: u64, pi: PiKind) -> Result<Hypothesis> {
    let d = ord2(p)?;
    Ok(match pi {
        PiKind::Alternating | PiKind::Symmetric => Hypothesis::Holds,
        PiKind::Cyclic if d == p - 1 => Hypothesis::Holds,
        PiKind::Cyclic => Hypothesis::Fails,
        PiKind::Other => Hypothesis::Unverified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop515Row {
    pub lattice: String,
    pub witness: IntVector,
    #[serde(with = "crate::bigstr")]
    pub orbit_size: BigInt,
    pub spans: bool,
    pub bfs_size: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop515Report {
    pub p: u64,
    pub rows: Vec<Prop515Row>,
    /// 2p(p-1) < 2^p.
    pub inequality_holds: bool,
    pub all_within_2p: bool,
}

/// Generating orbits of Z^p, L_E and L_1 + 2Z^p under Mon_p(Z), by size.
/// Sizes come from the counting formula; BFS confirms them when `bfs_max_p >= p`.
pub fn prop515_check(p: u64, bfs_max_p: u64) -> Result<Prop515Report> {
    crate::arith::require_odd_prime(p)?;
    let n = p as usize;
    let g = MonomialGroup::full(n);
    let e1 = IntVector::unit(n, 0);
    let e12 = e1.add(&IntVector::unit(n, 1));
    let one = IntVector::ones(n);
    let targets = [
        ("Z^p", e1, LatticeBasis::full(n)),
        ("L_E", e12, crate::gf2::l_even(n)),
        ("L_1", one, crate::gf2::l_one(n, true)),
    ];
    let two_p = BigInt::one() << n;
    let mut rows = Vec::new();
    for (name, w, target) in targets {
        let size = full_monomial_orbit_size(&w);
        let bfs_size = if p <= bfs_max_p { Some(g.orbit(&w.to_i64().unwrap(), 1 << 24)?.len()) } else { None };
        rows.push(Prop515Row { lattice: name.into(), spans: g.orbit_span(&w) == target, witness: w, orbit_size: size, bfs_size });
    }
    let pp = BigInt::from(p);
    Ok(Prop515Report {
        p,
        inequality_holds: BigInt::from(2) * &pp * (&pp - 1) < two_p,
        all_within_2p: rows.iter().all(|r| r.orbit_size <= two_p),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub subset: Vec<usize>,
    pub subspace: Vec<String>,
    #[serde(with = "crate::bigstr")]
    pub diagonal_order: BigInt,
    pub sublattice: LatticeBasis,
}

/// For each S: the C_p-stable subspace, the order of the diagonal group it gives, and Σ L_i.
pub fn classify(p: u64, cap: usize) -> Result<Vec<ClassRow>> {
    let f = factor_xp_minus_1(p)?;
    let n = p as usize;
    Ok(f.subsets(cap)?
        .into_iter()
        .map(|s| {
            let v = f.subspace(&s);
            ClassRow {
                subspace: v.basis().iter().map(|b| b.to_bit_string(n)).collect(),
                diagonal_order: BigInt::one() << v.dim(),
                sublattice: f.binary_sublattice(&s),
                subset: s,
            }
        })
        .collect())
}
