//! Simple group orders, automorphism group orders and representation-degree bounds,
//! driven by the bundled data file.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::pow2_ge;
use crate::arith::prime_power;
use crate::{Error, Result};

const BUNDLED: &str = include_str!("../../data/simple_groups.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub name: String,
    /// "q" or "n,q".
    pub params: String,
    pub constraints: Vec<String>,
    pub order_formula: String,
    /// Absent when no |Aut| formula is bundled; such families are reported unscanned.
    #[serde(default)]
    pub aut_formula: Option<String>,
    /// Lower bound on prdim or rdim, as tabulated.
    pub dim_bound_formula: String,
    /// "p" for a prdim bound, "r" for an rdim bound.
    pub bound_kind: String,
    /// Rank parameter for one-parameter families that share a formula with a two-parameter one.
    #[serde(default)]
    pub fixed_n: Option<u64>,
    pub source: String,
    pub expected_remaining: Vec<Vec<u64>>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SporadicRecord {
    pub name: String,
    #[serde(with = "crate::bigstr")]
    pub aut_order: BigInt,
    /// Least degree of a faithful complex representation.
    pub rdim: u64,
    pub expected_fail: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table62Row {
    pub name: String,
    pub family: String,
    pub params: Vec<u64>,
    #[serde(with = "crate::bigstr")]
    pub aut_order: BigInt,
    pub out: String,
    pub min_prime_dim: Option<u64>,
    #[serde(default)]
    pub irrational_only: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimpleGroupData {
    pub version: u32,
    pub families: Vec<FamilyRecord>,
    pub sporadics: Vec<SporadicRecord>,
    pub table62: Vec<Table62Row>,
}

impl SimpleGroupData {
    pub fn bundled() -> SimpleGroupData {
        serde_json::from_str(BUNDLED).expect("bundled simple group data parses")
    }

    pub fn from_json(s: &str) -> Result<SimpleGroupData> {
        let d: SimpleGroupData = serde_json::from_str(s)?;
        for f in &d.families {
            f.check()?;
        }
        Ok(d)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyRecord> {
        self.families.iter().find(|f| f.name == name)
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn qpow(q: u64, e: u64) -> BigInt {
    big(q).pow(e as u32)
}

fn prod(q: u64, exps: &[u64], sign: i64) -> BigInt {
    exps.iter().fold(BigInt::one(), |acc, &i| acc * (qpow(q, i) - sign))
}

fn field_degree(q: u64) -> u64 {
    prime_power(q).map(|(_, f)| f as u64).unwrap_or(0)
}

fn ceil_rat(num: BigInt, den: BigInt) -> BigInt {
    let r = BigRational::new(num, den);
    r.ceil().to_integer()
}

impl FamilyRecord {
    fn two_params(&self) -> bool {
        self.params == "n,q"
    }

    fn check(&self) -> Result<()> {
        let (n, q) = if self.two_params() { (Some(5), 4) } else { (self.fixed_n, 4) };
        for c in &self.constraints {
            constraint(c, n, q)?;
        }
        order(&self.order_formula, n, q)?;
        if let Some(a) = &self.aut_formula {
            aut(a, n, q)?;
        }
        dim_bound(&self.dim_bound_formula, n, q)?;
        if self.bound_kind != "p" && self.bound_kind != "r" {
            return Err(Error::UnknownFormula(format!("bound kind {}", self.bound_kind)));
        }
        Ok(())
    }

    pub fn admits(&self, n: Option<u64>, q: u64) -> Result<bool> {
        if prime_power(q).is_none() {
            return Ok(false);
        }
        for c in &self.constraints {
            if !constraint(c, n, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn order(&self, n: Option<u64>, q: u64) -> Result<BigInt> {
        order(&self.order_formula, n, q)
    }

    pub fn aut_order(&self, n: Option<u64>, q: u64) -> Result<BigInt> {
        match &self.aut_formula {
            Some(a) => aut(a, n, q),
            None => Err(Error::UnknownFormula(format!("no |Aut| formula for {}", self.name))),
        }
    }

    pub fn dim_bound(&self, n: Option<u64>, q: u64) -> Result<BigInt> {
        dim_bound(&self.dim_bound_formula, n, q)
    }
}

fn need_n(n: Option<u64>, id: &str) -> Result<u64> {
    n.ok_or_else(|| Error::UnknownFormula(format!("{id} needs n")))
}

fn constraint(id: &str, n: Option<u64>, q: u64) -> Result<bool> {
    let odd = q % 2 == 1;
    let nn = || need_n(n, id);
    Ok(match id {
        "q%4==1" => q % 4 == 1,
        "q%4==3" => q % 4 == 3,
        "q even" => !odd,
        "q odd" => odd,
        "q>2" => q > 2,
        "q>=4" => q >= 4,
        "q>=5" => q >= 5,
        "q==3" => q == 3,
        "q in {2,3,5}" => matches!(q, 2 | 3 | 5),
        "q not in {2,3,5}" => !matches!(q, 2 | 3 | 5),
        "3|q" => q % 3 == 0,
        "3∤q" => q % 3 != 0,
        "q=2^(2m+1), m>=0" => !odd && field_degree(q) % 2 == 1,
        "q=2^(2m+1), m>=1" => !odd && field_degree(q) % 2 == 1 && q > 2,
        "q=3^(2m+1), m>=1" => q % 3 == 0 && field_degree(q) % 2 == 1 && q > 3,
        "n>=2" => nn()? >= 2,
        "n>=3" => nn()? >= 3,
        "n>4 even" => nn()? > 4 && nn()? % 2 == 0,
        "n>4 odd" => nn()? > 4 && nn()? % 2 == 1,
        "n even" => nn()? % 2 == 0,
        "n odd" => nn()? % 2 == 1,
        "(n,q)!=(2,2)" => !(nn()? == 2 && q == 2),
        _ => return Err(Error::UnknownFormula(format!("constraint {id}"))),
    })
}

/// |S| for the simple group.
fn order(id: &str, n: Option<u64>, q: u64) -> Result<BigInt> {
    let g = |a: u64, b: u64| big(a.gcd(&b));
    Ok(match id {
        "psl" => {
            let n = need_n(n, id)?;
            qpow(q, n * (n - 1) / 2) * prod(q, &(2..=n).collect::<Vec<_>>(), 1) / g(n, q - 1)
        }
        "psl2" => qpow(q, 1) * (qpow(q, 2) - 1) / g(2, q - 1),
        "pomega_odd" | "psp" => {
            let n = need_n(n, id)?;
            let ev: Vec<u64> = (1..=n).map(|i| 2 * i).collect();
            qpow(q, n * n) * prod(q, &ev, 1) / g(2, q - 1)
        }
        "pomega_plus" => {
            let n = need_n(n, id)?;
            let ev: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            let d = (qpow(q, n) - 1u32).gcd(&big(4));
            qpow(q, n * (n - 1)) * (qpow(q, n) - 1) * prod(q, &ev, 1) / d
        }
        "pomega_plus8" => order("pomega_plus", Some(4), q)?,
        "psu" => {
            let n = need_n(n, id)?;
            let mut acc = qpow(q, n * (n + 1) / 2);
            for i in 2..=n + 1 {
                acc *= qpow(q, i) - if i % 2 == 0 { 1 } else { -1 };
            }
            acc / g(n + 1, q + 1)
        }
        "e6" => qpow(q, 36) * prod(q, &[2, 5, 6, 8, 9, 12], 1) / g(3, q - 1),
        "2e6" => {
            qpow(q, 36) * prod(q, &[2, 6, 8, 12], 1) * prod(q, &[5, 9], -1) / g(3, q + 1)
        }
        "e7" => qpow(q, 63) * prod(q, &[2, 6, 8, 10, 12, 14, 18], 1) / g(2, q - 1),
        "e8" => qpow(q, 120) * prod(q, &[2, 8, 12, 14, 18, 20, 24, 30], 1),
        "f4" => qpow(q, 24) * prod(q, &[2, 6, 8, 12], 1),
        "g2" => qpow(q, 6) * prod(q, &[2, 6], 1),
        "3d4" => qpow(q, 12) * (qpow(q, 8) + qpow(q, 4) + 1) * prod(q, &[2, 6], 1),
        "sz" => qpow(q, 2) * (qpow(q, 2) + 1) * (big(q) - 1),
        "2f4" => qpow(q, 12) * (qpow(q, 6) + 1) * (qpow(q, 4) - 1) * (qpow(q, 3) + 1) * (big(q) - 1),
        "2g2" => qpow(q, 3) * (qpow(q, 3) + 1) * (big(q) - 1),
        _ => return Err(Error::UnknownFormula(format!("order {id}"))),
    })
}

/// |Aut(S)| = |S| |Out(S)|.
fn aut(id: &str, n: Option<u64>, q: u64) -> Result<BigInt> {
    let f = big(field_degree(q));
    let gq = |a: u64, b: u64| big(a.gcd(&b));
    let (base, out) = match id {
        "aut_psl2" => ("psl2", gq(2, q - 1) * &f),
        "aut_psl" => ("psl", big(2) * gq(need_n(n, id)?, q - 1) * &f),
        "aut_pomega_odd" => ("pomega_odd", gq(2, q - 1) * &f),
        "aut_psp" => {
            let n = need_n(n, id)?;
            let graph = if n == 2 && q % 2 == 0 { 2 } else { 1 };
            ("psp", gq(2, q - 1) * &f * graph)
        }
        "aut_pomega_plus8" => ("pomega_plus8", (qpow(q, 4) - 1u32).gcd(&big(4)) * &f * 6),
        "aut_pomega_plus" => ("pomega_plus", (qpow(q, need_n(n, id)?) - 1u32).gcd(&big(4)) * &f * 2),
        "aut_psu" => ("psu", gq(need_n(n, id)? + 1, q + 1) * &f * 2),
        "aut_e6" => ("e6", gq(3, q - 1) * &f * 2),
        "aut_2e6" => ("2e6", gq(3, q + 1) * &f * 2),
        "aut_e7" => ("e7", gq(2, q - 1) * &f),
        "aut_e8" => ("e8", f.clone()),
        "aut_f4" => ("f4", &f * if q % 2 == 0 { 2 } else { 1 }),
        "aut_g2" => ("g2", &f * if q % 3 == 0 { 2 } else { 1 }),
        "aut_3d4" => ("3d4", &f * 3),
        "aut_sz" => ("sz", f.clone()),
        "aut_2f4" => ("2f4", f.clone()),
        "aut_2g2" => ("2g2", f.clone()),
        _ => return Err(Error::UnknownFormula(format!("aut {id}"))),
    };
    Ok(order(base, n, q)? * out)
}

/// Printed lower bound, rounded up to an integer.
fn dim_bound(id: &str, n: Option<u64>, q: u64) -> Result<BigInt> {
    let qb = big(q);
    let nn = || need_n(n, id);
    let one = BigInt::one();
    Ok(match id {
        "(q+1)/2" => ceil_rat(&qb + 1, big(2)),
        "(q-1)/2" => ceil_rat(&qb - 1, big(2)),
        "q-1" => &qb - 1,
        "(q^n-1)/(q-1)-n" => ceil_rat(qpow(q, nn()?) - 1, &qb - 1) - nn()?,
        "(3^(2n)-1)/8-(3^n-1)/2" => {
            let n = nn()?;
            ceil_rat((qpow(3, 2 * n) - 1) - (qpow(3, n) - 1) * 4, big(8))
        }
        "(q^(2n)-1)/(q^2-1)-n" => ceil_rat(qpow(q, 2 * nn()?) - 1, qpow(q, 2) - 1) - nn()?,
        "q(q-1)^2/2" => ceil_rat(&qb * (&qb - 1) * (&qb - 1), big(2)),
        "(q^2-1)/2" => ceil_rat(qpow(q, 2) - 1, big(2)),
        "q(q^n-1)(q^(n-1)-1)/(2(q+1))" => {
            let n = nn()?;
            ceil_rat(&qb * (qpow(q, n) - 1) * (qpow(q, n - 1) - 1), big(2) * (&qb + 1))
        }
        "(q^n-1)/2" => ceil_rat(qpow(q, nn()?) - 1, big(2)),
        "(q^3-1)(q^2+1)" => (qpow(q, 3) - 1) * (qpow(q, 2) + 1),
        "q^2(q^3-1)" => qpow(q, 2) * (qpow(q, 3) - 1),
        "(q^(n-1)-1)(q^(n-2)+1)" => (qpow(q, nn()? - 1) - 1) * (qpow(q, nn()? - 2) + 1),
        "q^(n-2)(q^(n-1)-1)" => qpow(q, nn()? - 2) * (qpow(q, nn()? - 1) - 1),
        "q^(n-2)(q^(n-1)+1)" => qpow(q, nn()? - 2) * (qpow(q, nn()? - 1) + 1),
        "q^9(q^2-1)" => qpow(q, 9) * (qpow(q, 2) - 1),
        "q^15(q^2-1)" => qpow(q, 15) * (qpow(q, 2) - 1),
        "q^27(q^2-1)" => qpow(q, 27) * (qpow(q, 2) - 1),
        "q^6(q^2-1)" => qpow(q, 6) * (qpow(q, 2) - 1),
        "q^7(q^3-1)(q-1)/2" => ceil_rat(qpow(q, 7) * (qpow(q, 3) - 1) * (&qb - 1), big(2)),
        "q(q^2-1)" => &qb * (qpow(q, 2) - 1),
        "q(q^n-1)/(q+1)" => ceil_rat(&qb * (qpow(q, nn()?) - 1), &qb + 1),
        "(q^(n+1)-1)/(q+1)" => ceil_rat(qpow(q, nn()? + 1) - 1, &qb + 1),
        "q^3(q^2-1)" => qpow(q, 3) * (qpow(q, 2) - 1),
        "q^2" => qpow(q, 2),
        // (q/2)^(1/2) is rounded down before multiplying
        "(q/2)^(1/2)q^4(q-1)" => Roots::sqrt(&(&qb / 2u32)) * qpow(q, 4) * (&qb - 1),
        "q^2-q+1" => qpow(q, 2) - &qb + one,
        _ => return Err(Error::UnknownFormula(format!("bound {id}"))),
    })
}

/// The three sufficient inequalities. `b` is the degree bound; it is only usable when positive.
fn degree_inequality(b: &BigInt, aut: &BigInt) -> bool {
    b > &BigInt::zero() && pow2_ge(b, &(BigInt::from(2) * aut * b))
}

fn twenty_nine(aut: &BigInt) -> bool {
    (BigInt::one() << 29u32) >= BigInt::from(58) * aut
}

#[derive(Clone, Copy, Debug)]
pub struct ScanCaps {
    pub n_max: u64,
    pub q_max: u64,
}

impl Default for ScanCaps {
    fn default() -> Self {
        ScanCaps { n_max: 12, q_max: 128 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyScan {
    pub name: String,
    pub scanned: usize,
    pub remaining: Vec<Vec<u64>>,
    pub expected: Vec<Vec<u64>>,
    pub matches: bool,
    pub unscanned: bool,
    pub note: Option<String>,
}

/// Parameters of each family for which none of the inequalities holds.
pub fn almost_simple_scan(data: &SimpleGroupData, caps: ScanCaps) -> Result<Vec<FamilyScan>> {
    let mut out = Vec::new();
    for fam in &data.families {
        if fam.aut_formula.is_none() {
            out.push(FamilyScan {
                name: fam.name.clone(),
                scanned: 0,
                remaining: vec![],
                expected: fam.expected_remaining.clone(),
                matches: false,
                unscanned: true,
                note: fam.note.clone(),
            });
            continue;
        }
        let ns: Vec<Option<u64>> =
            if fam.two_params() { (1..=caps.n_max).map(Some).collect() } else { vec![fam.fixed_n] };
        let mut remaining = Vec::new();
        let mut scanned = 0;
        for &n in &ns {
            for q in 2..=caps.q_max {
                if !fam.admits(n, q)? {
                    continue;
                }
                scanned += 1;
                let a = fam.aut_order(n, q)?;
                let b = fam.dim_bound(n, q)?;
                if !degree_inequality(&b, &a) && !twenty_nine(&a) {
                    let n = if fam.two_params() { n } else { None };
                    remaining.push(n.into_iter().chain([q]).collect::<Vec<u64>>());
                }
            }
        }
        out.push(FamilyScan {
            name: fam.name.clone(),
            scanned,
            matches: remaining == fam.expected_remaining,
            expected: fam.expected_remaining.clone(),
            remaining,
            unscanned: false,
            note: fam.note.clone(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SporadicOutcome {
    pub name: String,
    pub rdim_inequality: bool,
    pub twenty_nine: bool,
    pub fails_all: bool,
    pub expected_fail: bool,
}

pub fn sporadic_scan(data: &SimpleGroupData) -> Vec<SporadicOutcome> {
    data.sporadics
        .iter()
        .map(|s| {
            let r = degree_inequality(&BigInt::from(s.rdim), &s.aut_order);
            let t = twenty_nine(&s.aut_order);
            SporadicOutcome { name: s.name.clone(), rdim_inequality: r, twenty_nine: t, fails_all: !r && !t, expected_fail: s.expected_fail }
        })
        .collect()
}
