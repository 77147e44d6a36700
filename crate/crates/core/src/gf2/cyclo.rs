use num_bigint::BigInt;
use serde::Serialize;

use super::{F2Subspace, GF2Poly};
use crate::arith::{ord2, require_odd_prime};
use crate::linalg::{IntMatrix, IntVector, LatticeBasis};
use crate::{Error, Result};

/// x^p + 1 = f_0 f_1 ... f_k over GF(2), with f_0 = x + 1.
///
/// Labeling: f_1 is the least nontrivial factor read as a binary number, z is a
/// root of f_1, and the factor for the coset with least element t is the
/// minimal polynomial of z^t. Factors are ordered by that least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub p: u64,
    pub d: u64,
    pub factors: Vec<GF2Poly>,
    /// `cosets[0] = {0}`; `cosets[i]` indexes `factors[i]`.
    pub cosets: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorRow {
    pub index: usize,
    pub coset: Vec<u64>,
    pub degree: usize,
    pub bits: String,
    pub poly: String,
}

/// Orbits of multiplication by 2 on 1..p, ordered by least element; each orbit sorted.
pub fn cyclotomic_cosets(p: u64) -> Result<Vec<Vec<u64>>> {
    require_odd_prime(p)?;
    let mut seen = vec![false; p as usize];
    let mut out = Vec::new();
    for t in 1..p {
        if seen[t as usize] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = t;
        while !seen[x as usize] {
            seen[x as usize] = true;
            c.push(x);
            x = x * 2 % p;
        }
        c.sort_unstable();
        out.push(c);
    }
    Ok(out)
}

/// Deterministic factorization: refine (x^p+1)/(x+1) by gcds with the coset idempotents
/// sum_{c in C} x^c, which take values in GF(2) at every p-th root of unity and separate the factors.
pub fn factor_xp_minus_1(p: u64) -> Result<CyclotomicFactorization> {
    let d = ord2(p)?;
    let cosets = cyclotomic_cosets(p)?;
    let du = d as usize;
    let mut parts = vec![GF2Poly::all_ones(p as usize)];
    for c in &cosets {
        let theta = GF2Poly::from_exponents(&c.iter().map(|&x| x as usize).collect::<Vec<_>>());
        let mut next = Vec::with_capacity(parts.len() * 2);
        for part in parts {
            if part.degree() == Some(du) {
                next.push(part);
                continue;
            }
            let g = part.gcd(&theta.rem(&part));
            let dg = g.degree().unwrap_or(0);
            if g.is_zero() || dg == 0 || Some(dg) == part.degree() {
                next.push(part);
            } else {
                let (q, r) = part.div_rem(&g);
                debug_assert!(r.is_zero());
                next.push(g);
                next.push(q);
            }
        }
        parts = next;
    }
    assert!(
        parts.iter().all(|f| f.degree() == Some(du)),
        "idempotent refinement left a reducible part for p = {p}"
    );
    assert_eq!(parts.len(), cosets.len());

    let f1 = parts.iter().min().unwrap().clone();
    let mut factors = vec![GF2Poly::from_exponents(&[0, 1])];
    for c in &cosets {
        let t = c[0] as usize;
        let zt = GF2Poly::monomial(t).rem(&f1);
        let f = parts
            .iter()
            .find(|g| g.compose_mod(&zt, &f1).is_zero())
            .expect("every power of a root has a minimal polynomial among the factors");
        factors.push(f.clone());
    }
    let mut all = vec![vec![0u64]];
    all.extend(cosets);
    Ok(CyclotomicFactorization { p, d, factors, cosets: all })
}

impl CyclotomicFactorization {
    pub fn count(&self) -> usize {
        self.factors.len()
    }

    pub fn product(&self) -> GF2Poly {
        self.factors.iter().fold(GF2Poly::one(), |a, f| a.mul(f))
    }

    pub fn rows(&self) -> Vec<FactorRow> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| FactorRow {
                index: i,
                coset: self.cosets[i].clone(),
                degree: f.degree().unwrap(),
                bits: f.bit_string(),
                poly: f.to_string(),
            })
            .collect()
    }

    /// g_i = product of the factors other than f_i.
    pub fn g(&self, i: usize) -> GF2Poly {
        self.factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(GF2Poly::one(), |a, (_, f)| a.mul(f))
    }

    /// Product of the factors outside S.
    pub fn h(&self, s: &[usize]) -> GF2Poly {
        self.factors
            .iter()
            .enumerate()
            .filter(|(j, _)| !s.contains(j))
            .fold(GF2Poly::one(), |a, (_, f)| a.mul(f))
    }

    /// The C_p-stable subspace of F_2^p attached to S: the ideal generated by h_S in F_2[x]/(x^p - 1).
    pub fn subspace(&self, s: &[usize]) -> F2Subspace {
        let p = self.p as usize;
        let h = self.h(s);
        let dh = h.degree().unwrap();
        if dh >= p {
            return F2Subspace::zero(p);
        }
        let shifts: Vec<GF2Poly> = (0..p - dh).map(|k| h.shl(k)).collect();
        F2Subspace::from_vectors(p, &shifts)
    }

    /// Every subset S (as a sorted index list) in bitmask order. Fails past `cap` subsets.
    pub fn subsets(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let k = self.count();
        if k >= 63 || (1usize << k) > cap {
            return Err(Error::CapExceeded { what: "factor subsets", cap });
        }
        Ok((0..1usize << k).map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect()).collect())
    }

    /// Binary vector v_i of coefficients of g_i.
    pub fn v(&self, i: usize) -> IntVector {
        let g = self.g(i);
        IntVector::from_i64(&(0..self.p as usize).map(|k| g.coeff(k) as i64).collect::<Vec<_>>())
    }

    /// D_i: diagonal matrix with -1 where g_i has coefficient 1.
    pub fn diag_generator(&self, i: usize) -> IntMatrix {
        let g = self.g(i);
        let signs: Vec<BigInt> =
            (0..self.p as usize).map(|k| BigInt::from(if g.coeff(k) { -1 } else { 1 })).collect();
        IntMatrix::diagonal(&signs)
    }

    /// L_i: cyclic shifts of v_i together with 2Z^p.
    pub fn l_i(&self, i: usize) -> LatticeBasis {
        let p = self.p as usize;
        let mut l = LatticeBasis::scaled(p, &BigInt::from(2));
        let v = self.v(i);
        for k in 0..p {
            l.insert(&cyclic_shift(&v, k));
        }
        l
    }

    /// Sum of L_i over S; 2Z^p for the empty set.
    pub fn binary_sublattice(&self, s: &[usize]) -> LatticeBasis {
        let p = self.p as usize;
        s.iter().fold(LatticeBasis::scaled(p, &BigInt::from(2)), |acc, &i| acc.sum(&self.l_i(i)))
    }
}

/// Cyclic shift: coordinate j moves to (j + k) mod n.
pub fn cyclic_shift(v: &IntVector, k: usize) -> IntVector {
    let n = v.dim();
    let mut out = vec![BigInt::from(0); n];
    for (j, x) in v.entries().iter().enumerate() {
        out[(j + k) % n] = x.clone();
    }
    IntVector::new(out)
}

pub fn diag_generators(p: u64) -> Result<Vec<IntMatrix>> {
    let f = factor_xp_minus_1(p)?;
    Ok((0..f.count()).map(|i| f.diag_generator(i)).collect())
}

/// All sums of the L_i, keyed by S.
pub fn binary_sublattices(p: u64, cap: usize) -> Result<Vec<(Vec<usize>, LatticeBasis)>> {
    let f = factor_xp_minus_1(p)?;
    let ls: Vec<LatticeBasis> = (0..f.count()).map(|i| f.l_i(i)).collect();
    let two = LatticeBasis::scaled(p as usize, &BigInt::from(2));
    Ok(f.subsets(cap)?
        .into_iter()
        .map(|s| {
            let l = s.iter().fold(two.clone(), |acc, &i| acc.sum(&ls[i]));
            (s, l)
        })
        .collect())
}

/// The lattice generated by the all-ones vector: Z1 alone, or Z1 + 2Z^p.
pub fn l_one(p: usize, with_even: bool) -> LatticeBasis {
    let one = IntVector::ones(p);
    if with_even {
        let mut l = LatticeBasis::scaled(p, &BigInt::from(2));
        l.insert(&one);
        l
    } else {
        LatticeBasis::from_vectors(p, [&one])
    }
}

/// Vectors with even coordinate sum.
pub fn l_even(p: usize) -> LatticeBasis {
    let mut vs = vec![IntVector::unit(p, 0).scale(&BigInt::from(2))];
    for i in 1..p {
        vs.push(IntVector::unit(p, 0).add(&IntVector::unit(p, i)));
    }
    LatticeBasis::from_vectors(p, &vs)
}

/// Reduction of a lattice modulo 2 as a subspace of F_2^n.
pub fn mod2_image(l: &LatticeBasis) -> F2Subspace {
    let n = l.ambient_dim();
    let vs: Vec<GF2Poly> = l
        .basis_vectors()
        .iter()
        .map(|v| GF2Poly::from_coeffs(&v.entries().iter().map(|x| x.bit(0)).collect::<Vec<_>>()))
        .collect();
    F2Subspace::from_vectors(n, &vs)
}

/// Every C_p-stable subspace of F_2^p, keyed by S.
pub fn cp_stable_subspaces(p: u64, cap: usize) -> Result<Vec<(Vec<usize>, F2Subspace)>> {
    let f = factor_xp_minus_1(p)?;
    Ok(f.subsets(cap)?.into_iter().map(|s| {
        let v = f.subspace(&s);
        (s, v)
    }).collect())
}
