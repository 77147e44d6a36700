//! Reproduction of the root-system tables: symmetric ranks of Weyl group lattices,
//! the resulting lower bounds on representation dimension, and the Smith normal
//! form membership matrices.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::linalg::{hnf, IntMatrix, IntVector, LatticeBasis};
use crate::rootsys::{Family, LatticeKind, RootSystemSpec, WeylModel};
use crate::symrank::{table_dimension_maximum, CandidateMode, DimensionCandidate, SearchCaps};
use crate::{Error, Result};

const BUNDLED: &str = include_str!("../data/tables.json");

/// Orbits up to this rank are enumerated explicitly; above it only the stabilizer formula is used.
pub const EXPLICIT_MAX_RANK: usize = 8;
const ORBIT_CAP: usize = 2_000_000;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table31Fixture {
    pub family: String,
    /// "n>=4 even", "n=6", ...
    pub ranks: String,
    pub lattice: String,
    pub kind: String,
    pub symrank: String,
    pub generator: String,
    pub generator_kind: String,
    pub generator_index: String,
    /// Generator used instead of the tabulated one, when the tabulated label does not fit the numbering convention.
    #[serde(default)]
    pub r#override: Option<GeneratorOverride>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorOverride {
    pub generator: String,
    pub generator_kind: String,
    pub generator_index: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table11Fixture {
    pub n: String,
    pub value: String,
    pub family: String,
    pub rank: String,
    pub lattice: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table32Fixture {
    pub family: String,
    pub ranks: String,
    pub bottom_rows: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFixtures {
    pub version: u32,
    pub table31: Vec<Table31Fixture>,
    pub table11: Vec<Table11Fixture>,
    pub table32: Vec<Table32Fixture>,
    /// Exact values for irreducible lattices in low dimensions.
    pub table42: Vec<LowDimFixture>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowDimFixture {
    pub n: String,
    pub value: String,
    pub lattice: String,
}

impl TableFixtures {
    pub fn bundled() -> TableFixtures {
        serde_json::from_str(BUNDLED).expect("bundled table fixtures parse")
    }
}

fn family_of(s: &str) -> Result<Family> {
    s.chars().next().and_then(Family::from_letter).ok_or_else(|| Error::UnknownFormula(format!("family {s}")))
}

/// Rank conditions as tabulated: "n>=k", "n>=k even", "n>=k odd", "n=k".
fn rank_ok(cond: &str, n: usize) -> Result<bool> {
    let bad = || Error::UnknownFormula(format!("rank condition {cond}"));
    let mut parts = cond.split_whitespace();
    let head = parts.next().ok_or_else(bad)?;
    let ok = if let Some(k) = head.strip_prefix("n>=") {
        n >= k.parse::<usize>().map_err(|_| bad())?
    } else if let Some(k) = head.strip_prefix("n=") {
        n == k.parse::<usize>().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    Ok(ok && match parts.next() {
        None => true,
        Some("even") => n % 2 == 0,
        Some("odd") => n % 2 == 1,
        Some(_) => return Err(bad()),
    })
}

/// Evaluates the tabulated symrank formulas.
fn eval_formula(f: &str, n: usize, d: usize) -> Result<BigInt> {
    let n64 = n as u64;
    Ok(match f {
        "n+1" => BigInt::from(n + 1),
        "binom(n+1,d)" => binomial(n64 + 1, d as u64),
        "n(n+1)" => BigInt::from(n * (n + 1)),
        "2^n" => BigInt::one() << n,
        "2^(n-1)" => BigInt::one() << (n - 1),
        "2n" => BigInt::from(2 * n),
        "2n(n-1)" => BigInt::from(2 * n * (n - 1)),
        _ => f.parse().map_err(|_| Error::UnknownFormula(format!("symrank {f}")))?,
    })
}

fn eval_index(s: &str, n: usize, d: usize) -> Result<usize> {
    Ok(match s {
        "n" => n,
        "n-1" => n - 1,
        "d" => d,
        _ => s.parse().map_err(|_| Error::UnknownFormula(format!("index {s}")))?,
    })
}

fn eval_kind(s: &str, n: usize, d: usize) -> Result<LatticeKind> {
    Ok(match s {
        "weight" => LatticeKind::Weight,
        "root" => LatticeKind::Root,
        "intermediate(d)" => LatticeKind::Intermediate(d),
        _ => match s.strip_prefix("intermediate_D(").and_then(|r| r.strip_suffix(')')) {
            Some(i) => LatticeKind::IntermediateD(eval_index(i, n, d)?),
            None => return Err(Error::UnknownFormula(format!("lattice kind {s}"))),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Table31Row {
    pub root_system: String,
    pub lattice: String,
    pub kind: LatticeKind,
    #[serde(with = "crate::bigstr")]
    pub expected: BigInt,
    #[serde(with = "crate::bigstr")]
    pub symrank: BigInt,
    pub generator: String,
    pub printed_generator: String,
    pub generator_vector: IntVector,
    /// Size of the explicitly enumerated orbit, when the rank allows it.
    pub explicit_orbit: Option<usize>,
    /// Whether the orbit of the generator spans exactly the named lattice.
    pub span_matches: bool,
    /// Lattice actually spanned when it differs from the named one.
    pub spanned_kind: Option<LatticeKind>,
    pub matches: bool,
}

fn identify(model: &WeylModel, l: &LatticeBasis) -> Option<LatticeKind> {
    model.lattice_kinds().into_iter().find(|&k| model.lattice(k).map(|nl| &nl.basis == l).unwrap_or(false))
}

fn evaluate_row(model: &WeylModel, fx: &Table31Fixture, d: usize) -> Result<Table31Row> {
    let n = model.rank();
    let kind = eval_kind(&fx.kind, n, d)?;
    let target = model.lattice(kind)?;
    let (gkind, gindex, glabel) = match &fx.r#override {
        Some(o) => (&o.generator_kind, &o.generator_index, &o.generator),
        None => (&fx.generator_kind, &fx.generator_index, &fx.generator),
    };
    let gi = eval_index(gindex, n, d)?;
    let v = match gkind.as_str() {
        "weight" => model.fundamental_weight(gi),
        "root" => model.simple_root(gi),
        other => return Err(Error::UnknownFormula(format!("generator kind {other}"))),
    };
    let expected = eval_formula(&fx.symrank, n, d)?;
    let symrank = model.weyl_orbit_size(&v);
    let (explicit, span) = if n <= EXPLICIT_MAX_RANK {
        let orbit = model.group().orbit(&v, ORBIT_CAP)?;
        (Some(orbit.size), orbit.span())
    } else {
        (None, model.group().invariant_span(std::slice::from_ref(&v))?)
    };
    let span_matches = span == target.basis;
    let sizes_agree = explicit.map_or(true, |e| BigInt::from(e) == symrank);
    let label = if fx.lattice.contains("d |") { format!("Λ^{{+{d}}}") } else { fx.lattice.clone() };
    Ok(Table31Row {
        root_system: model.spec.to_string(),
        lattice: label,
        kind,
        matches: span_matches && sizes_agree && symrank == expected,
        spanned_kind: if span_matches { None } else { identify(model, &span) },
        expected,
        symrank,
        generator: glabel.replace('d', &d.to_string()),
        printed_generator: fx.generator.replace('d', &d.to_string()),
        generator_vector: v,
        explicit_orbit: explicit,
        span_matches,
    })
}

/// Every symmetric-rank table row for root systems of rank at most `max_rank`, ordered by family, rank, row.
pub fn table31(max_rank: usize) -> Result<Vec<Table31Row>> {
    table31_with(&TableFixtures::bundled(), max_rank, |_| true)
}

/// As [`table31`], restricted to the root systems accepted by `keep`.
pub fn table31_with(
    fixtures: &TableFixtures,
    max_rank: usize,
    keep: impl Fn(RootSystemSpec) -> bool,
) -> Result<Vec<Table31Row>> {
    let mut out = Vec::new();
    for spec in RootSystemSpec::all_up_to(max_rank).into_iter().filter(|s| keep(*s)) {
        let model = WeylModel::build(spec)?;
        let n = spec.rank;
        for fx in &fixtures.table31 {
            if family_of(&fx.family)? != spec.family || !rank_ok(&fx.ranks, n)? {
                continue;
            }
            let ds: Vec<usize> = if fx.kind == "intermediate(d)" {
                (2..=n).filter(|d| (n + 1) % d == 0).collect()
            } else {
                vec![0]
            };
            for d in ds {
                out.push(evaluate_row(&model, fx, d)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RdimBound {
    pub n: usize,
    #[serde(with = "crate::bigstr")]
    pub value: BigInt,
    #[serde(with = "crate::bigstr")]
    pub expected: BigInt,
    pub witness: String,
    pub lattice: LatticeKind,
    pub generator_vector: IntVector,
    pub span_matches: bool,
    pub matches: bool,
}

/// The lower bound on rdim(n) from the largest Weyl group orbit witness.
pub fn rdim_lower_bound(n: usize) -> Result<RdimBound> {
    if n == 0 {
        return Err(Error::InvalidRank { family: '?', rank: 0 });
    }
    let fixtures = TableFixtures::bundled();
    let fx = fixtures
        .table11
        .iter()
        .find(|r| r.n == n.to_string())
        .or_else(|| fixtures.table11.iter().find(|r| r.n == ">=7" && n >= 7))
        .ok_or_else(|| Error::UnknownFormula(format!("rdim row for n = {n}")))?;
    let rank = if fx.rank == "n" { n } else { fx.rank.parse().map_err(|_| Error::UnknownFormula(fx.rank.clone()))? };
    let model = WeylModel::build(RootSystemSpec::new(family_of(&fx.family)?, rank)?)?;
    let kind = if fx.lattice == "Λ" { LatticeKind::Weight } else { LatticeKind::Root };
    let nl = model.lattice(kind)?;
    let v = nl.generator_hint.clone();
    let value = model.weyl_orbit_size(&v);
    let span = model.group().invariant_span(std::slice::from_ref(&v))?;
    let expected = eval_formula(&fx.value, n, 0)?;
    let span_matches = span == nl.basis;
    Ok(RdimBound {
        n,
        matches: span_matches && value == expected,
        value,
        expected,
        witness: format!("({}, W({}))", fx.lattice, model.spec),
        lattice: kind,
        generator_vector: v,
        span_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SnfRowCheck {
    pub root_system: String,
    pub bottom_rows: Vec<Vec<i64>>,
    /// The columns of the completed matrix span the root lattice.
    pub columns_span_root_lattice: bool,
    pub determinant: i64,
}

/// Bottom rows of the tabulated matrix for rank n.
pub fn table32_bottom_rows(spec: RootSystemSpec) -> Option<Vec<Vec<i64>>> {
    let n = spec.rank;
    let pairs = |k: usize, a: i64| -> Vec<i64> { (0..k).flat_map(|_| [a, 0]).collect() };
    let cat = |mut a: Vec<i64>, b: &[i64]| {
        a.extend_from_slice(b);
        a
    };
    Some(match (spec.family, n) {
        (Family::A, n) if n >= 2 => vec![(1..n as i64).chain([n as i64 + 1]).collect()],
        (Family::B, n) => vec![cat(vec![0; n - 1], &[2])],
        (Family::C, n) if n % 2 == 1 => vec![cat(pairs((n - 1) / 2, 1), &[2])],
        (Family::C, n) => vec![cat(pairs((n - 2) / 2, 1), &[0, -2]), cat(vec![0; n - 2], &[1, 2])],
        (Family::D, n) if n % 2 == 0 => {
            vec![cat(pairs((n - 2) / 2, 1), &[2, 0]), cat(pairs((n - 2) / 2, 1), &[0, 2])]
        }
        (Family::D, n) => vec![cat(pairs((n - 3) / 2, 2), &[2, 1, 4])],
        (Family::E, 6) => vec![vec![1, 0, 2, 0, 1, 3]],
        (Family::E, 7) => vec![vec![0, 1, 0, 0, 1, 0, 2]],
        _ => return None,
    })
}

/// Completes the tabulated bottom rows with identity rows and compares column spans with the root lattice.
pub fn table32_check(spec: RootSystemSpec) -> Result<Option<SnfRowCheck>> {
    let Some(bottom) = table32_bottom_rows(spec) else { return Ok(None) };
    let n = spec.rank;
    let model = WeylModel::build(spec)?;
    let mut rows: Vec<Vec<i64>> = (0..n - bottom.len()).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    rows.extend(bottom.iter().cloned());
    let m = IntMatrix::from_rows_i64(&rows);
    let cols = hnf(&m.transpose());
    Ok(Some(SnfRowCheck {
        root_system: spec.to_string(),
        columns_span_root_lattice: cols == model.root_lattice(),
        determinant: m.det().to_i64().unwrap_or(0),
        bottom_rows: bottom,
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct LowDimRow {
    pub n: usize,
    #[serde(with = "crate::bigstr::opt")]
    pub expected: Option<BigInt>,
    #[serde(with = "crate::bigstr")]
    pub internal_maximum: BigInt,
    pub internal_witness: String,
    #[serde(with = "crate::bigstr")]
    pub maximum: BigInt,
    pub external_candidates: usize,
    /// Root-system candidates cover only part of the irreducible lattices; external groups are needed for the rest.
    pub partial: bool,
    pub matches: bool,
}

/// Root-system lattices of rank n whose table generator is known to generate, as orbit candidates.
pub fn root_system_candidates(n: usize) -> Result<Vec<DimensionCandidate>> {
    let mut out = Vec::new();
    for r in table31_with(&TableFixtures::bundled(), n, |s| s.rank == n)? {
        if !r.matches {
            continue;
        }
        let model = WeylModel::build(r.root_system.parse()?)?;
        out.push(DimensionCandidate {
            label: format!("({}, W({}))", r.lattice, r.root_system),
            group: model.group().clone(),
            lattice: model.lattice(r.kind)?.basis,
            mode: CandidateMode::Orbit(r.generator_vector.clone()),
        });
    }
    Ok(out)
}

/// Largest symmetric rank over root-system lattices of rank n and any supplied candidates,
/// against the exact low-dimensional values.
pub fn low_dimension_check(n: usize, external: &[DimensionCandidate], caps: SearchCaps) -> Result<LowDimRow> {
    let fixtures = TableFixtures::bundled();
    let expected = match fixtures.table42.iter().find(|r| r.n == n.to_string()) {
        Some(r) => Some(eval_formula(&r.value, n, 0)?),
        None => None,
    };
    let internal = table_dimension_maximum(n, &root_system_candidates(n)?, caps)?;
    let witness = internal
        .outcomes
        .iter()
        .find(|o| o.value == internal.maximum)
        .map(|o| o.label.clone())
        .unwrap_or_default();
    let maximum = if external.is_empty() {
        internal.maximum.clone()
    } else {
        table_dimension_maximum(n, external, caps)?.maximum.max(internal.maximum.clone())
    };
    Ok(LowDimRow {
        n,
        matches: expected.as_ref().map_or(false, |e| *e == maximum),
        expected,
        internal_maximum: internal.maximum,
        internal_witness: witness,
        maximum,
        external_candidates: external.len(),
        partial: external.is_empty(),
    })
}
