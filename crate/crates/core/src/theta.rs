//! Positive definite integral forms: short vectors, theta coefficients and the
//! diagonal-norm bound on generating sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::{IntMatrix, IntVector, LatticeBasis};
use crate::matgroup::{MatGroup, Orbit};
use crate::{Error, Result};

pub const DEFAULT_VECTOR_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    matrix: IntMatrix,
    // upper triangle of the rational LDL^T factors: q[i][i] = d_i, q[i][j] = mu_ij
    q: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaPrefix {
    pub horizon: u64,
    pub coefficients: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalBound {
    #[serde(with = "crate::bigstr::vec")]
    pub diagonal_norms: Vec<BigInt>,
    pub bound: u64,
    pub witnesses: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormClassOrbit {
    pub orbit: Orbit,
    #[serde(with = "crate::bigstr")]
    pub norm: BigInt,
    pub uniform_norm: bool,
    pub span: LatticeBasis,
    pub spans_full: bool,
}

impl GramForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if matrix.rows() == 0 || matrix.leading_minors().iter().any(|m| !m.is_positive()) {
            return Err(Error::NotPositiveDefinite);
        }
        let n = matrix.rows();
        let mut q: Vec<Vec<BigRational>> = (0..n)
            .map(|i| matrix.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        Ok(GramForm { matrix, q })
    }

    pub fn identity(n: usize) -> Self {
        GramForm::new(IntMatrix::identity(n)).expect("identity is positive definite")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn norm(&self, v: &IntVector) -> BigInt {
        v.dot(&self.matrix.mul_vec(v))
    }

    /// Every v with v^T X v <= bound, lexicographically sorted, with its norm.
    pub fn short_vectors(&self, bound: &BigInt, cap: usize) -> Result<Vec<(IntVector, BigInt)>> {
        let n = self.dim();
        if bound.is_negative() {
            return Ok(Vec::new());
        }
        let mut raw = Vec::new();
        let mut x = vec![BigInt::zero(); n];
        self.enumerate(n, BigRational::from_integer(bound.clone()), &mut x, &mut raw, cap)?;
        let mut out: Vec<(IntVector, BigInt)> = raw
            .into_iter()
            .map(|v| {
                let v = IntVector::new(v);
                let nv = self.norm(&v);
                (v, nv)
            })
            .collect();
        debug_assert!(out.iter().all(|(_, nv)| nv <= bound));
        out.sort();
        Ok(out)
    }

    // Coordinates are fixed from the last one down; `level` counts the still-free ones.
    fn enumerate(
        &self,
        level: usize,
        budget: BigRational,
        x: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
        cap: usize,
    ) -> Result<()> {
        if level == 0 {
            if out.len() >= cap {
                return Err(Error::CapExceeded { what: "short vectors", cap });
            }
            out.push(x.clone());
            return Ok(());
        }
        let i = level - 1;
        let n = self.dim();
        let d = &self.q[i][i];
        let mut center = BigRational::zero();
        for j in i + 1..n {
            center -= &self.q[i][j] * BigRational::from_integer(x[j].clone());
        }
        // |x_i - center| <= sqrt(budget / d); widen to an integer range then filter exactly
        let t = (&budget / d).floor().to_integer();
        let r = t.sqrt() + BigInt::one();
        let lo = (&center - BigRational::from_integer(r.clone())).ceil().to_integer();
        let hi = (&center + BigRational::from_integer(r)).floor().to_integer();
        let mut xi = lo;
        while xi <= hi {
            let diff = BigRational::from_integer(xi.clone()) - &center;
            let used = d * &diff * &diff;
            if used <= budget {
                x[i] = xi.clone();
                self.enumerate(level - 1, &budget - &used, x, out, cap)?;
            }
            xi += 1;
        }
        x[i] = BigInt::zero();
        Ok(())
    }

    pub fn theta_prefix(&self, horizon: u64, cap: usize) -> Result<ThetaPrefix> {
        let mut coefficients = vec![0u64; horizon as usize + 1];
        for (_, nv) in self.short_vectors(&BigInt::from(horizon), cap)? {
            coefficients[nv.to_usize().expect("norm within horizon")] += 1;
        }
        Ok(ThetaPrefix { horizon, coefficients })
    }

    /// Sum of N_i over the distinct diagonal entries i, with the vectors counted.
    pub fn diagonal_bound(&self, cap: usize) -> Result<DiagonalBound> {
        let n = self.dim();
        let norms: BTreeSet<BigInt> = (0..n).map(|i| self.matrix.get(i, i).clone()).collect();
        let max = norms.iter().max().unwrap().clone();
        let witnesses: Vec<IntVector> = self
            .short_vectors(&max, cap)?
            .into_iter()
            .filter(|(_, nv)| norms.contains(nv))
            .map(|(v, _)| v)
            .collect();
        Ok(DiagonalBound {
            diagonal_norms: norms.into_iter().collect(),
            bound: witnesses.len() as u64,
            witnesses,
        })
    }
}

/// Orbit of `v` together with the checks that it stays in one norm class and spans Z^n.
pub fn orbit_within_norm_class(g: &MatGroup, f: &GramForm, v: &IntVector, cap: usize) -> Result<NormClassOrbit> {
    if let Some(i) = g.form_violation(f.matrix()) {
        return Err(Error::FormNotPreserved(i));
    }
    let orbit = g.orbit(v, cap)?;
    let norm = f.norm(v);
    let uniform_norm = orbit.elements.iter().all(|w| f.norm(w) == norm);
    let span = orbit.span();
    let spans_full = span == LatticeBasis::full(f.dim());
    Ok(NormClassOrbit { orbit, norm, uniform_norm, span, spans_full })
}

/// gcd of the entries, handy for checking that a form is primitive.
pub fn content(m: &IntMatrix) -> BigInt {
    m.entries().iter().fold(BigInt::zero(), |a, x| a.gcd(x))
}
