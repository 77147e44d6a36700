use std::cmp::Ordering;
use std::fmt;

/// Polynomial over the two-element field; bit i is the coefficient of x^i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF2Poly {
    words: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        GF2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = GF2Poly { words: vec![0; k / 64 + 1] };
        p.words[k / 64] = 1 << (k % 64);
        p
    }

    pub fn from_exponents(es: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in es {
            p.flip(e);
        }
        p
    }

    /// Coefficients listed from x^0 upward.
    pub fn from_coeffs(cs: &[bool]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in cs.iter().enumerate() {
            if c {
                p.flip(i);
            }
        }
        p
    }

    /// x^n + 1.
    pub fn x_pow_plus_one(n: usize) -> Self {
        Self::from_exponents(&[0, n])
    }

    /// 1 + x + ... + x^(n-1).
    pub fn all_ones(n: usize) -> Self {
        Self::from_exponents(&(0..n).collect::<Vec<_>>())
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let w = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.words.iter().position(|&w| w != 0).map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &GF2Poly) -> GF2Poly {
        let n = self.words.len().max(other.words.len());
        let mut words = vec![0; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        let mut p = GF2Poly { words };
        p.trim();
        p
    }

    pub fn add_assign(&mut self, other: &GF2Poly) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.trim();
    }

    pub fn shl(&self, k: usize) -> GF2Poly {
        if self.is_zero() {
            return Self::zero();
        }
        let (q, r) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + q + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + q] |= w << r;
            if r > 0 {
                words[i + q + 1] |= w >> (64 - r);
            }
        }
        let mut p = GF2Poly { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &GF2Poly) -> GF2Poly {
        let mut acc = GF2Poly::zero();
        for e in other.exponents() {
            acc.add_assign(&self.shl(e));
        }
        acc
    }

    pub fn div_rem(&self, m: &GF2Poly) -> (GF2Poly, GF2Poly) {
        let dm = m.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        let mut q = GF2Poly::zero();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            q.flip(dr - dm);
            r.add_assign(&m.shl(dr - dm));
        }
        (q, r)
    }

    pub fn rem(&self, m: &GF2Poly) -> GF2Poly {
        self.div_rem(m).1
    }

    pub fn gcd(&self, other: &GF2Poly) -> GF2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &GF2Poly, m: &GF2Poly) -> GF2Poly {
        self.mul(other).rem(m)
    }

    /// self(r) reduced modulo m, by Horner's rule.
    pub fn compose_mod(&self, r: &GF2Poly, m: &GF2Poly) -> GF2Poly {
        let Some(deg) = self.degree() else { return GF2Poly::zero() };
        let mut acc = GF2Poly::zero();
        for i in (0..=deg).rev() {
            acc = acc.mul_mod(r, m);
            if self.coeff(i) {
                acc.add_assign(&GF2Poly::one());
            }
        }
        acc.rem(m)
    }

    /// Coefficients x^0..x^(len-1) as a 0/1 string.
    pub fn to_bit_string(&self, len: usize) -> String {
        (0..len).map(|i| if self.coeff(i) { '1' } else { '0' }).collect()
    }

    /// Coefficients x^0..x^deg as a 0/1 string.
    pub fn bit_string(&self) -> String {
        self.to_bit_string(self.degree().map_or(1, |d| d + 1))
    }

    pub fn parse_bits(s: &str) -> Option<GF2Poly> {
        let mut cs = Vec::new();
        for ch in s.trim().chars() {
            cs.push(match ch {
                '0' => false,
                '1' => true,
                _ => return None,
            });
        }
        Some(Self::from_coeffs(&cs))
    }
}

impl Ord for GF2Poly {
    /// Compares as binary integers (x = 2).
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for GF2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Poly({self})")
    }
}
