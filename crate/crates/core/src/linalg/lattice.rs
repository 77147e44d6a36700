use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntMatrix, IntVector};
use crate::{Error, Result};

/// Sublattice of Z^n in row-style Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Index {
    Finite(#[serde(with = "crate::bigstr")] BigInt),
    Infinite,
}

pub fn hnf(m: &IntMatrix) -> LatticeBasis {
    let mut l = LatticeBasis::zero(m.cols());
    for i in 0..m.rows() {
        l.absorb(m.row(i).to_vec());
    }
    l.reduce_above();
    l
}

impl LatticeBasis {
    pub fn zero(n: usize) -> Self {
        LatticeBasis { ambient_dim: n, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Z^n.
    pub fn full(n: usize) -> Self {
        Self::scaled(n, &BigInt::one())
    }

    /// kZ^n for k > 0.
    pub fn scaled(n: usize, k: &BigInt) -> Self {
        assert!(k.is_positive());
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = k.clone();
                r
            })
            .collect();
        LatticeBasis { ambient_dim: n, rows, pivots: (0..n).collect() }
    }

    pub fn from_vectors<'a, I>(n: usize, vs: I) -> Self
    where
        I: IntoIterator<Item = &'a IntVector>,
    {
        let mut l = Self::zero(n);
        for v in vs {
            assert_eq!(v.dim(), n);
            l.absorb(v.entries().to_vec());
        }
        l.reduce_above();
        l
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> IntMatrix {
        let entries = self.rows.iter().flatten().cloned().collect();
        IntMatrix::new(self.rows.len(), self.ambient_dim, entries).expect("consistent shape")
    }

    pub fn basis_vectors(&self) -> Vec<IntVector> {
        self.rows.iter().map(|r| IntVector::new(r.clone())).collect()
    }

    /// Adds `v` to the lattice; returns whether the lattice grew.
    pub fn insert(&mut self, v: &IntVector) -> bool {
        assert_eq!(v.dim(), self.ambient_dim);
        let changed = self.absorb(v.entries().to_vec());
        if changed {
            self.reduce_above();
        }
        changed
    }

    /// Row-reduces `v` into the echelon rows. Leaves entries above pivots unreduced.
    fn absorb(&mut self, mut v: Vec<BigInt>) -> bool {
        let mut changed = false;
        let mut k = 0;
        loop {
            let c = match v.iter().position(|x| !x.is_zero()) {
                Some(c) => c,
                None => return changed,
            };
            while k < self.pivots.len() && self.pivots[k] < c {
                k += 1;
            }
            if k == self.pivots.len() || self.pivots[k] != c {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(k, v);
                self.pivots.insert(k, c);
                return true;
            }
            let r = &mut self.rows[k];
            let (q, rem) = v[c].div_rem(&r[c]);
            if rem.is_zero() {
                for (x, y) in v.iter_mut().zip(r.iter()).skip(c) {
                    *x -= &q * y;
                }
            } else {
                let e = r[c].extended_gcd(&v[c]);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let a = &r[c] / &g;
                let b = &v[c] / &g;
                for j in c..self.ambient_dim {
                    let nr = &x * &r[j] + &y * &v[j];
                    let nv = &a * &v[j] - &b * &r[j];
                    r[j] = nr;
                    v[j] = nv;
                }
                if r[c].is_negative() {
                    r.iter_mut().for_each(|t| *t = -&*t);
                }
                changed = true;
            }
        }
    }

    fn reduce_above(&mut self) {
        for i in 0..self.rows.len() {
            let c = self.pivots[i];
            let (upper, lower) = self.rows.split_at_mut(i);
            let p = &lower[0];
            for r in upper.iter_mut() {
                let q = r[c].div_floor(&p[c]);
                if !q.is_zero() {
                    for (x, y) in r.iter_mut().zip(p.iter()).skip(c) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    /// Coordinates of `v` in the basis rows, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &IntVector) -> Option<IntVector> {
        assert_eq!(v.dim(), self.ambient_dim);
        let mut w = v.entries().to_vec();
        let mut coords = vec![BigInt::zero(); self.rows.len()];
        for (k, (r, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if w[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = w[c].div_rem(&r[c]);
            if !rem.is_zero() {
                return None;
            }
            for (x, y) in w.iter_mut().zip(r.iter()).skip(c) {
                *x -= &q * y;
            }
            coords[k] = q;
        }
        if w.iter().all(Zero::is_zero) {
            Some(IntVector::new(coords))
        } else {
            None
        }
    }

    pub fn member(&self, v: &IntVector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.rows.iter().all(|r| self.member(&IntVector::new(r.clone())))
    }

    /// Combination of basis rows with the given coefficients.
    pub fn combine(&self, coeffs: &[BigInt]) -> IntVector {
        assert_eq!(coeffs.len(), self.rows.len());
        let mut out = vec![BigInt::zero(); self.ambient_dim];
        for (a, r) in coeffs.iter().zip(&self.rows) {
            if a.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(r) {
                *x += a * y;
            }
        }
        IntVector::new(out)
    }

    /// `[sup : self]`.
    pub fn index_in(&self, sup: &LatticeBasis) -> Result<Index> {
        if self.ambient_dim != sup.ambient_dim {
            return Err(Error::DimensionMismatch { expected: sup.ambient_dim, got: self.ambient_dim });
        }
        if !sup.contains_lattice(self) {
            return Err(Error::NotASublattice);
        }
        if self.rank() != sup.rank() {
            return Ok(Index::Infinite);
        }
        debug_assert_eq!(self.pivots, sup.pivots);
        let num: BigInt = self.rows.iter().zip(&self.pivots).map(|(r, &c)| r[c].clone()).product();
        let den: BigInt = sup.rows.iter().zip(&sup.pivots).map(|(r, &c)| r[c].clone()).product();
        Ok(Index::Finite(num / den))
    }

    /// Largest m with L = mM for an integral lattice M.
    pub fn content(&self) -> BigInt {
        self.rows.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// The zero lattice is not counted as primitive.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn sum(&self, other: &LatticeBasis) -> LatticeBasis {
        let mut l = self.clone();
        for r in &other.rows {
            l.absorb(r.clone());
        }
        l.reduce_above();
        l
    }

    pub fn intersect(&self, other: &LatticeBasis) -> LatticeBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let n = self.ambient_dim;
        let (r1, r2) = (self.rank(), other.rank());
        if r1 == 0 || r2 == 0 {
            return LatticeBasis::zero(n);
        }
        // left kernel of [B1; -B2]: rows z with z·[B1; -B2] = 0
        let m = r1 + r2;
        let mut aug = IntMatrix::zero(m, n + m);
        for (i, r) in self.rows.iter().chain(&other.rows).enumerate() {
            let sign = if i < r1 { BigInt::one() } else { -BigInt::one() };
            for (j, x) in r.iter().enumerate() {
                aug.set(i, j, x * &sign);
            }
            aug.set(i, n + i, BigInt::one());
        }
        let h = hnf(&aug);
        let mut out = LatticeBasis::zero(n);
        for (r, &c) in h.rows.iter().zip(&h.pivots) {
            if c < n {
                continue;
            }
            out.absorb(self.combine(&r[n..n + r1]).into_entries());
        }
        out.reduce_above();
        out
    }

    /// Image under `a`, acting on column vectors.
    pub fn image(&self, a: &IntMatrix) -> LatticeBasis {
        let vs: Vec<IntVector> = self.basis_vectors().iter().map(|v| a.mul_vec(v)).collect();
        LatticeBasis::from_vectors(a.rows(), &vs)
    }
}

impl Serialize for LatticeBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut b = self.basis();
        if b.rows() == 0 {
            b = IntMatrix::zero(0, self.ambient_dim);
        }
        b.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeBasis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        IntMatrix::deserialize(d).map(|m| hnf(&m))
    }
}
