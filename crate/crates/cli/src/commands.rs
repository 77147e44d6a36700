use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::{json, Value};
use symrank_core::bounds::{
    almost_simple_scan, min_threshold, prime_of_form, sporadic_scan, ScanCaps, SimpleGroupData, ThmCase,
};
use symrank_core::gf2::{cp_stable_subspaces, factor_xp_minus_1};
use symrank_core::matgroup::MatGroup;
use symrank_core::monomial::{classify, prop515_check};
use symrank_core::rootsys::{LatticeKind, RootSystemSpec, WeylModel};
use symrank_core::symrank::{
    symrank_search, verify_orbit_generates, CandidateMode, DimensionCandidate, SearchCaps,
};
use symrank_core::tables::{low_dimension_check, rdim_lower_bound, table31};
use symrank_core::theta::GramForm;
use symrank_core::{hnf, Error, IntMatrix, IntVector, LatticeBasis, Result};

use crate::report::{RunReport, Table};
use crate::{BoundsCmd, Command, Gf2Cmd, Mode, MonomialCmd, RootsysCmd, Theorem};

const THETA_CAP: usize = 10_000_000;
const SUBSET_CAP: usize = 1 << 16;
const LOW_DIM_RADIUS: u32 = 1;

pub struct Context {
    caps: SearchCaps,
    theta_cap: usize,
    data_dir: Option<PathBuf>,
}

impl Context {
    pub fn new(cap: Option<usize>, data: Option<PathBuf>) -> Self {
        let mut caps = SearchCaps::default();
        if let Some(c) = cap {
            caps.orbit = c;
            caps.box_vectors = c;
        }
        let data_dir = data.or_else(|| std::env::var_os("SYMRANK_DATA_DIR").map(PathBuf::from));
        Context { caps, theta_cap: cap.unwrap_or(THETA_CAP), data_dir }
    }

    fn data_file(&self, name: &str) -> Option<PathBuf> {
        self.data_dir.as_ref().map(|d| d.join(name)).filter(|p| p.exists())
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

pub fn run(ctx: &Context, cmd: Command) -> Result<RunReport> {
    match cmd {
        Command::Rootsys { cmd: RootsysCmd::Table { max_rank } } => rootsys_table(max_rank),
        Command::Rdim { max_n } => rdim(max_n),
        Command::Verify { name, p, a, max_n, horizon } => match name {
            Theorem::LowDims => low_dims(ctx, max_n),
            Theorem::Prop515 => prop515(p),
            Theorem::ThmA => thm_a(a, None, horizon),
            Theorem::ThmA2 => thm_a2(),
            Theorem::AlmostSimple => almost_simple(ctx, None, ScanCaps::default()),
        },
        Command::Theta { identity, gram, horizon } => theta(ctx, identity, gram, horizon),
        Command::Gf2 { cmd: Gf2Cmd::FactorXp1 { p } } => gf2_factor(p),
        Command::Gf2 { cmd: Gf2Cmd::Subspaces { p } } => gf2_subspaces(p),
        Command::Monomial { cmd: MonomialCmd::Classify { p } } => monomial_classify(p),
        Command::Monomial { cmd: MonomialCmd::Prop515 { p } } => prop515(p),
        Command::Symrank { root_system, lattice, group, lattice_file, radius, mode, vector } => {
            symrank(ctx, root_system, &lattice, group, lattice_file, radius, mode, vector)
        }
        Command::Bounds { cmd: BoundsCmd::Prime { a, case, horizon } } => {
            let case = case.map(|c| c.parse::<ThmCase>()).transpose()?;
            thm_a(a, case, horizon)
        }
        Command::Bounds { cmd: BoundsCmd::AlmostSimple { file, n_max, q_max } } => {
            almost_simple(ctx, file, ScanCaps { n_max, q_max })
        }
        Command::Bounds { cmd: BoundsCmd::PrimeOfForm { qmax, mmax } } => primes_of_form(qmax, mmax),
    }
}

fn rootsys_table(max_rank: usize) -> Result<RunReport> {
    let rows = table31(max_rank)?;
    let mut t = Table::new(&["root_system", "lattice", "symrank", "generator", "span_matches"]);
    let (mut expected, mut got) = (vec![], vec![]);
    for r in &rows {
        t.push(vec![s(&r.root_system), s(&r.lattice), s(&r.symrank), s(&r.generator), s(r.span_matches)]);
        let key = format!("{} {}", r.root_system, r.lattice);
        expected.push(json!({"row": key, "symrank": s(&r.expected), "spans_lattice": true}));
        got.push(json!({"row": key, "symrank": s(&r.symrank), "spans_lattice": r.span_matches}));
    }
    let mut rep = RunReport::new("rootsys table", json!({"max_rank": max_rank}), &rows, t)
        .compare(Value::Array(expected), Value::Array(got));
    for r in rows.iter().filter(|r| !r.span_matches) {
        rep.notes.push(format!(
            "{} {}: orbit of {} spans {}",
            r.root_system,
            r.lattice,
            r.generator,
            r.spanned_kind.map_or("another lattice".into(), |k| k.to_string())
        ));
    }
    Ok(rep)
}

fn rdim(max_n: usize) -> Result<RunReport> {
    let rows = (1..=max_n).map(rdim_lower_bound).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["n", "rdim_lower_bound", "witness"]);
    for r in &rows {
        t.push(vec![s(r.n), s(&r.value), s(&r.witness)]);
    }
    let expected = rows.iter().map(|r| json!({"n": r.n, "value": s(&r.expected), "spans": true})).collect();
    let got = rows.iter().map(|r| json!({"n": r.n, "value": s(&r.value), "spans": r.span_matches})).collect();
    Ok(RunReport::new("rdim", json!({"max_n": max_n}), &rows, t).compare(Value::Array(expected), Value::Array(got)))
}

fn external_candidates(ctx: &Context, n: usize) -> Result<Vec<DimensionCandidate>> {
    let Some(dir) = &ctx.data_dir else { return Ok(vec![]) };
    let prefix = format!("imf_{n}_");
    let mut paths: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name().and_then(|f| f.to_str()).map_or(false, |f| f.starts_with(&prefix) && f.ends_with(".json"))
            })
            .collect(),
        Err(_) => vec![],
    };
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let g = MatGroup::from_json(&read(p)?)?;
            Ok(DimensionCandidate {
                label: p.file_name().unwrap().to_string_lossy().into_owned(),
                group: g,
                lattice: LatticeBasis::full(n),
                mode: CandidateMode::Search { radius: LOW_DIM_RADIUS },
            })
        })
        .collect()
}

fn low_dims(ctx: &Context, max_n: usize) -> Result<RunReport> {
    let mut rows = vec![];
    for n in 1..=max_n {
        let ext = external_candidates(ctx, n)?;
        rows.push(low_dimension_check(n, &ext, ctx.caps)?);
    }
    let mut t = Table::new(&["n", "expected", "maximum", "witness", "external_groups", "coverage"]);
    for r in &rows {
        t.push(vec![
            s(r.n),
            r.expected.as_ref().map_or("-".into(), s),
            s(&r.maximum),
            s(&r.internal_witness),
            s(r.external_candidates),
            if r.partial { "partial".into() } else { "with external groups".into() },
        ]);
    }
    let known: Vec<_> = rows.iter().filter(|r| r.expected.is_some()).collect();
    let expected = known.iter().map(|r| json!({"n": r.n, "value": s(r.expected.as_ref().unwrap())})).collect();
    let got = known.iter().map(|r| json!({"n": r.n, "value": s(&r.maximum)})).collect();
    let mut rep =
        RunReport::new("verify low-dims", json!({"max_n": max_n}), &rows, t).compare(Value::Array(expected), Value::Array(got));
    if rows.iter().any(|r| r.partial) {
        rep.missing_data = true;
        rep.notes.push(
            "no i.m.f. generator files (imf_<n>_*.json) for some dimensions: only root-system lattices were checked"
                .into(),
        );
    }
    Ok(rep)
}

fn prop515(p: u64) -> Result<RunReport> {
    let r = prop515_check(p, 7)?;
    let mut t = Table::new(&["lattice", "witness", "orbit_size", "spans", "bfs_size"]);
    for row in &r.rows {
        t.push(vec![
            s(&row.lattice),
            s(&row.witness),
            s(&row.orbit_size),
            s(row.spans),
            row.bfs_size.map_or("-".into(), s),
        ]);
    }
    let pb = BigInt::from(p);
    let want = [&pb * 2, &pb * 2 * (&pb - 1), BigInt::from(1) << p];
    let expected = want.iter().map(|w| json!({"size": s(w), "spans": true})).collect();
    let got = r.rows.iter().map(|x| json!({"size": s(&x.orbit_size), "spans": x.spans})).collect();
    Ok(RunReport::new("verify prop515", json!({"p": p}), &r, t).compare(Value::Array(expected), Value::Array(got)))
}

fn thm_a(a: u64, case: Option<ThmCase>, horizon: u64) -> Result<RunReport> {
    let cases: Vec<ThmCase> = match case {
        Some(c) => vec![c],
        None => ThmCase::ALL.to_vec(),
    };
    let rows = cases.iter().map(|&c| min_threshold(a, c, horizon)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["a", "case", "l", "threshold", "horizon", "anomalies"]);
    for r in &rows {
        t.push(vec![s(r.a), s(r.case), s(r.ell), s(r.threshold), s(r.horizon), s(r.anomalies.len())]);
    }
    Ok(RunReport::new("bounds prime", json!({"a": a, "case": case.map(|c| c.to_string()), "horizon": horizon}), &rows, t))
}

fn thm_a2() -> Result<RunReport> {
    let mut rep = thm_a(2, None, 2000)?;
    rep.command = "verify thmA2".into();
    let windows: [(u64, u64); 4] = [(31, 31), (31, 31), (760, 768), (1297, 1305)];
    let thresholds: Vec<u64> = rep.result.as_array().unwrap().iter().map(|r| r["threshold"].as_u64().unwrap()).collect();
    let show = |(lo, hi): (u64, u64)| if lo == hi { json!(lo) } else { json!(format!("{lo}..={hi}")) };
    let expected = windows.iter().map(|&w| show(w)).collect();
    let got = thresholds
        .iter()
        .zip(windows)
        .map(|(&t, w)| if (w.0..=w.1).contains(&t) { show(w) } else { json!(t) })
        .collect();
    rep.notes.push(format!("thresholds {thresholds:?}"));
    Ok(rep.compare(Value::Array(expected), Value::Array(got)))
}

fn almost_simple(ctx: &Context, file: Option<PathBuf>, caps: ScanCaps) -> Result<RunReport> {
    let path = file.or_else(|| ctx.data_file("simple_groups.json"));
    let data = match &path {
        Some(p) => SimpleGroupData::from_json(&read(p)?)?,
        None => SimpleGroupData::bundled(),
    };
    let scan = almost_simple_scan(&data, caps)?;
    let sporadic = sporadic_scan(&data);
    let mut t = Table::new(&["group", "remaining", "expected", "match"]);
    let fmt = |v: &[Vec<u64>]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).map(|x| format!("({x})")).collect::<Vec<_>>().join(" ")
        }
    };
    for f in &scan {
        let status = if f.unscanned { "unscanned".into() } else { s(f.matches) };
        t.push(vec![s(&f.name), fmt(&f.remaining), fmt(&f.expected), status]);
    }
    for sp in &sporadic {
        t.push(vec![s(&sp.name), if sp.fails_all { "fails".into() } else { "none".into() }, if sp.expected_fail { "fails".into() } else { "none".into() }, s(sp.fails_all == sp.expected_fail)]);
    }
    let expected = scan
        .iter()
        .filter(|f| !f.unscanned)
        .map(|f| json!({"family": f.name, "remaining": f.expected}))
        .chain(sporadic.iter().map(|x| json!({"sporadic": x.name, "fails": x.expected_fail})))
        .collect();
    let got = scan
        .iter()
        .filter(|f| !f.unscanned)
        .map(|f| json!({"family": f.name, "remaining": f.remaining}))
        .chain(sporadic.iter().map(|x| json!({"sporadic": x.name, "fails": x.fails_all})))
        .collect();
    let params = json!({"file": path.map(|p| p.display().to_string()), "n_max": caps.n_max, "q_max": caps.q_max});
    let mut rep = RunReport::new("bounds almost-simple", params, json!({"families": scan, "sporadics": sporadic}), t)
        .compare(Value::Array(expected), Value::Array(got));
    for f in scan.iter().filter(|f| f.unscanned) {
        rep.notes.push(format!("{}: no |Aut| formula bundled, unscanned", f.name));
    }
    Ok(rep)
}

fn primes_of_form(qmax: u64, mmax: u32) -> Result<RunReport> {
    let rows = prime_of_form(qmax, mmax);
    let mut t = Table::new(&["p", "q", "m"]);
    for r in &rows {
        t.push(vec![s(&r.p), s(r.q), s(r.m)]);
    }
    Ok(RunReport::new("bounds prime-of-form", json!({"qmax": qmax, "mmax": mmax}), &rows, t))
}

fn theta(ctx: &Context, identity: Option<usize>, gram: Option<PathBuf>, horizon: u64) -> Result<RunReport> {
    let (f, label) = match (identity, gram) {
        (Some(n), _) => (GramForm::identity(n), format!("I_{n}")),
        (None, Some(p)) => {
            let m: IntMatrix = serde_json::from_str(&read(&p)?)?;
            (GramForm::new(m)?, p.display().to_string())
        }
        (None, None) => return Err(Error::MissingExternalData("--identity or --gram is required".into())),
    };
    let prefix = f.theta_prefix(horizon, ctx.theta_cap)?;
    let diag = f.diagonal_bound(ctx.theta_cap)?;
    let mut t = Table::new(&["norm", "count"]);
    for (k, c) in prefix.coefficients.iter().enumerate() {
        t.push(vec![s(k), s(c)]);
    }
    let mut rep = RunReport::new("theta", json!({"form": label, "horizon": horizon}), json!({"prefix": prefix, "diagonal_bound": diag}), t);
    rep.notes.push(format!("diagonal bound {}", diag.bound));
    Ok(rep)
}

fn gf2_factor(p: u64) -> Result<RunReport> {
    let f = factor_xp_minus_1(p)?;
    let rows = f.rows();
    let mut t = Table::new(&["index", "coset", "degree", "bits", "poly"]);
    for r in &rows {
        let coset = r.coset.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        t.push(vec![s(r.index), coset, s(r.degree), s(&r.bits), s(&r.poly)]);
    }
    Ok(RunReport::new("gf2 factor-xp1", json!({"p": p}), &rows, t))
}

fn gf2_subspaces(p: u64) -> Result<RunReport> {
    let subs = cp_stable_subspaces(p, SUBSET_CAP)?;
    let mut t = Table::new(&["subset", "dim", "basis"]);
    let mut out = vec![];
    for (set, v) in &subs {
        let basis: Vec<String> = v.basis().iter().map(|b| b.to_bit_string(p as usize)).collect();
        t.push(vec![format!("{set:?}"), s(v.dim()), basis.join(" ")]);
        out.push(json!({"subset": set, "dim": v.dim(), "basis": basis}));
    }
    Ok(RunReport::new("gf2 subspaces", json!({"p": p}), out, t))
}

fn monomial_classify(p: u64) -> Result<RunReport> {
    let rows = classify(p, SUBSET_CAP)?;
    let mut t = Table::new(&["subset", "subspace_size", "diagonal_order", "index_in_Z^p"]);
    let full = LatticeBasis::full(p as usize);
    for r in &rows {
        let idx = r.sublattice.index_in(&full).map(|i| format!("{i:?}")).unwrap_or_else(|e| e.to_string());
        t.push(vec![format!("{:?}", r.subset), s(r.subspace.len()), s(&r.diagonal_order), idx]);
    }
    Ok(RunReport::new("monomial classify", json!({"p": p}), &rows, t))
}

fn parse_vector(s: &str) -> Result<IntVector> {
    let entries = s
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| Error::MalformedMatrix(format!("bad vector entry {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntVector::new(entries))
}

fn parse_kind(s: &str) -> Result<LatticeKind> {
    let bad = || Error::KindUnavailable(s.to_string());
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| bad())?)),
        None => (s, None),
    };
    Ok(match (head.to_ascii_lowercase().as_str(), arg) {
        ("weight", None) => LatticeKind::Weight,
        ("root", None) => LatticeKind::Root,
        ("intermediate", Some(d)) => LatticeKind::Intermediate(d),
        ("intermediate_d", Some(i)) => LatticeKind::IntermediateD(i),
        _ => return Err(bad()),
    })
}

#[allow(clippy::too_many_arguments)]
fn symrank(
    ctx: &Context,
    root_system: Option<String>,
    lattice: &str,
    group: Option<PathBuf>,
    lattice_file: Option<PathBuf>,
    radius: u32,
    mode: Mode,
    vector: Option<String>,
) -> Result<RunReport> {
    let (g, l, label) = match (root_system, group) {
        (Some(rs), _) => {
            let m = WeylModel::build(rs.parse::<RootSystemSpec>()?)?;
            let l = m.lattice(parse_kind(lattice)?)?.basis;
            (m.group().clone(), l, format!("W({rs}) on {lattice}"))
        }
        (None, Some(path)) => {
            let g = MatGroup::from_json(&read(&path)?)?;
            let l = match &lattice_file {
                Some(lp) => hnf(&serde_json::from_str::<IntMatrix>(&read(lp)?)?),
                None => LatticeBasis::full(g.dim()),
            };
            let label = g.label().map(|s| s.to_string()).unwrap_or_else(|| path.display().to_string());
            (g, l, label)
        }
        (None, None) => return Err(Error::MissingExternalData("--root-system or --group is required".into())),
    };
    let params = json!({"group": label, "radius": radius, "mode": format!("{mode:?}").to_lowercase()});
    match mode {
        Mode::Search => {
            let r = symrank_search(&g, &l, radius, ctx.caps)?;
            let mut t = Table::new(&["upper_bound", "lower_bound", "exactness", "witness_orbits", "nodes"]);
            let w: Vec<String> = r.witness.iter().map(|o| format!("{}x{}", o.representative, o.size)).collect();
            t.push(vec![s(&r.upper_bound), s(&r.lower_bound), format!("{:?}", r.exactness), w.join(" "), s(r.nodes)]);
            Ok(RunReport::new("symrank", params, &r, t))
        }
        Mode::Orbit => {
            let v = parse_vector(vector.as_deref().ok_or_else(|| Error::HypothesisNotMet("--vector is required for --mode orbit".into()))?)?;
            let r = verify_orbit_generates(&g, &l, &v, ctx.caps.orbit)?;
            let mut t = Table::new(&["vector", "orbit_size", "generates"]);
            t.push(vec![s(&v), s(r.orbit_size), s(r.generates)]);
            Ok(RunReport::new("symrank", params, json!({"vector": v, "orbit_size": r.orbit_size, "generates": r.generates}), t))
        }
    }
}
