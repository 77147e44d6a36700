//! Symmetric rank: smallest G-stable generating sets, searched over a coefficient box.

use std::cmp::Reverse;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::linalg::{IntVector, LatticeBasis};
use crate::matgroup::{MatGroup, Orbit};
use crate::{Error, Result};

pub const DEFAULT_RADIUS: u32 = 3;

#[derive(Clone, Copy, Debug)]
pub struct SearchCaps {
    /// Vectors in the coefficient box.
    pub box_vectors: usize,
    /// Elements of a single orbit.
    pub orbit: usize,
    /// Branch-and-bound nodes before the search gives up on exactness.
    pub nodes: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps { box_vectors: 2_000_000, orbit: 1_000_000, nodes: 5_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    ExactWithinBound,
    UpperOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOrbit {
    pub representative: IntVector,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymrankResult {
    #[serde(with = "crate::bigstr")]
    pub upper_bound: BigInt,
    pub witness: Vec<WitnessOrbit>,
    #[serde(with = "crate::bigstr")]
    pub lower_bound: BigInt,
    pub exactness: Exactness,
    /// True when the upper bound meets the lower bound, so the value is the symmetric rank outright.
    pub certified: bool,
    pub search_radius: u32,
    pub orbits_considered: usize,
    pub nodes: usize,
}

impl SymrankResult {
    pub fn value(&self) -> &BigInt {
        &self.upper_bound
    }
}

struct Candidate {
    rep: IntVector,
    elements: Vec<IntVector>,
    span: LatticeBasis,
}

impl Candidate {
    fn size(&self) -> usize {
        self.elements.len()
    }
}

fn l1(v: &IntVector) -> BigInt {
    v.entries().iter().map(|x| x.abs()).sum()
}

/// Orbits of every nonzero vector whose coordinates in the basis of `l` lie in [-radius, radius].
fn box_orbits(g: &MatGroup, l: &LatticeBasis, radius: u32, caps: &SearchCaps) -> Result<Vec<Orbit>> {
    let basis = l.basis_vectors();
    let r = basis.len();
    let side = 2 * radius as u128 + 1;
    let total = side.checked_pow(r as u32).unwrap_or(u128::MAX);
    if total > caps.box_vectors as u128 {
        return Err(Error::CapExceeded { what: "coefficient box", cap: caps.box_vectors });
    }
    let mut seen: HashSet<IntVector> = HashSet::new();
    let mut orbits = Vec::new();
    let mut coeffs = vec![-(radius as i64); r];
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            let v = l.combine(&big);
            if !seen.contains(&v) {
                let o = g.orbit(&v, caps.orbit)?;
                seen.extend(o.elements.iter().cloned());
                orbits.push(o);
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return Ok(orbits);
            }
            if coeffs[k] < radius as i64 {
                coeffs[k] += 1;
                break;
            }
            coeffs[k] = -(radius as i64);
            k += 1;
        }
    }
}

/// Candidate orbits ordered by size, then l1 norm, then lexicographically largest representative.
/// Orbits whose span is covered by an orbit that is no larger are dropped.
fn candidates(orbits: Vec<Orbit>) -> Vec<Candidate> {
    let mut cs: Vec<Candidate> = orbits
        .into_iter()
        .map(|o| {
            let span = o.span();
            let rep = o.elements.last().unwrap().clone();
            Candidate { rep, elements: o.elements, span }
        })
        .collect();
    cs.sort_by(|a, b| {
        (a.size(), l1(&a.rep), Reverse(&a.rep)).cmp(&(b.size(), l1(&b.rep), Reverse(&b.rep)))
    });
    let mut by_span: HashMap<LatticeBasis, ()> = HashMap::new();
    cs.retain(|c| by_span.insert(c.span.clone(), ()).is_none());
    let mut kept: Vec<Candidate> = Vec::new();
    for c in cs {
        if !kept.iter().any(|k| k.size() <= c.size() && k.span.contains_lattice(&c.span)) {
            kept.push(c);
        }
    }
    kept
}

struct Search<'a> {
    cands: &'a [Candidate],
    target: &'a LatticeBasis,
    rank: usize,
    best: usize,
    best_set: Vec<usize>,
    nodes: usize,
    node_cap: usize,
    truncated: bool,
}

impl Search<'_> {
    fn run(&mut self, start: usize, current: &LatticeBasis, cost: usize, chosen: &mut Vec<usize>) {
        if current == self.target {
            if cost < self.best {
                self.best = cost;
                self.best_set = chosen.clone();
            }
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_cap {
            self.truncated = true;
            return;
        }
        let deficit = self.rank - current.rank();
        for i in start..self.cands.len() {
            if self.truncated {
                return;
            }
            let c = &self.cands[i];
            if cost + c.size().max(deficit.max(1)) >= self.best {
                break;
            }
            if current.contains_lattice(&c.span) {
                continue;
            }
            let next = current.sum(&c.span);
            chosen.push(i);
            self.run(i + 1, &next, cost + c.size(), chosen);
            chosen.pop();
        }
    }
}

fn check_stable(g: &MatGroup, l: &LatticeBasis) -> Result<()> {
    if g.dim() != l.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: l.ambient_dim() });
    }
    match g.unstable_generator(l) {
        Some(i) => Err(Error::NotGStable(i)),
        None => Ok(()),
    }
}

/// Smallest union of G-orbits spanning `l`, among orbits of vectors in the coefficient box.
pub fn symrank_search(g: &MatGroup, l: &LatticeBasis, radius: u32, caps: SearchCaps) -> Result<SymrankResult> {
    check_stable(g, l)?;
    let rank = l.rank();
    if rank == 0 {
        return Ok(SymrankResult {
            upper_bound: BigInt::zero(),
            witness: vec![],
            lower_bound: BigInt::zero(),
            exactness: Exactness::ExactWithinBound,
            certified: true,
            search_radius: radius,
            orbits_considered: 0,
            nodes: 0,
        });
    }
    if radius == 0 {
        return Err(Error::HypothesisNotMet("radius must be positive".into()));
    }
    let orbits = box_orbits(g, l, radius, &caps)?;
    let considered = orbits.len();
    let cands = candidates(orbits);

    // greedy incumbent; the basis vectors lie in the box, so this always closes
    let mut cur = LatticeBasis::zero(l.ambient_dim());
    let mut greedy = Vec::new();
    let mut cost = 0;
    for (i, c) in cands.iter().enumerate() {
        if &cur == l {
            break;
        }
        if !cur.contains_lattice(&c.span) {
            cur = cur.sum(&c.span);
            cost += c.size();
            greedy.push(i);
        }
    }
    assert_eq!(&cur, l, "box orbits failed to span the lattice");

    let mut s = Search {
        cands: &cands,
        target: l,
        rank,
        best: cost + 1,
        best_set: greedy.clone(),
        nodes: 0,
        node_cap: caps.nodes,
        truncated: false,
    };
    s.run(0, &LatticeBasis::zero(l.ambient_dim()), 0, &mut Vec::new());
    let (best, set) = if s.best <= cost { (s.best, s.best_set.clone()) } else { (cost, greedy) };

    let witness: Vec<WitnessOrbit> =
        set.iter().map(|&i| WitnessOrbit { representative: cands[i].rep.clone(), size: cands[i].size() }).collect();
    let all: Vec<&IntVector> = set.iter().flat_map(|&i| cands[i].elements.iter()).collect();
    assert_eq!(&LatticeBasis::from_vectors(l.ambient_dim(), all), l, "witness does not span the lattice");

    let upper = BigInt::from(best);
    let lower = BigInt::from(rank);
    Ok(SymrankResult {
        certified: upper == lower,
        upper_bound: upper,
        witness,
        lower_bound: lower,
        exactness: if s.truncated { Exactness::UpperOnly } else { Exactness::ExactWithinBound },
        search_radius: radius,
        orbits_considered: considered,
        nodes: s.nodes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCheck {
    pub generates: bool,
    pub orbit_size: usize,
    pub span: LatticeBasis,
}

/// Whether the single orbit Gv generates `l`.
pub fn verify_orbit_generates(g: &MatGroup, l: &LatticeBasis, v: &IntVector, cap: usize) -> Result<OrbitCheck> {
    check_stable(g, l)?;
    if !l.member(v) {
        return Err(Error::VectorNotInLattice);
    }
    let o = g.orbit(v, cap)?;
    let span = o.span();
    Ok(OrbitCheck { generates: &span == l, orbit_size: o.size, span })
}

/// How a candidate's symmetric rank is bounded.
#[derive(Clone, Debug)]
pub enum CandidateMode {
    Search { radius: u32 },
    /// Upper bound from one generating orbit.
    Orbit(IntVector),
}

#[derive(Clone, Debug)]
pub struct DimensionCandidate {
    pub label: String,
    pub group: MatGroup,
    pub lattice: LatticeBasis,
    pub mode: CandidateMode,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateOutcome {
    pub label: String,
    #[serde(with = "crate::bigstr")]
    pub value: BigInt,
    pub exactness: Exactness,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionMaximum {
    pub n: usize,
    pub outcomes: Vec<CandidateOutcome>,
    #[serde(with = "crate::bigstr")]
    pub maximum: BigInt,
    /// The maximum is only as complete as the supplied candidate list.
    pub conditional_on_candidates: bool,
}

/// Largest symmetric-rank bound over the supplied (group, lattice) candidates of dimension `n`.
pub fn table_dimension_maximum(n: usize, candidates: &[DimensionCandidate], caps: SearchCaps) -> Result<DimensionMaximum> {
    let mut outcomes = Vec::new();
    for c in candidates {
        if c.group.dim() != n || c.lattice.rank() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c.lattice.rank() });
        }
        let (value, exactness) = match &c.mode {
            CandidateMode::Search { radius } => {
                let r = symrank_search(&c.group, &c.lattice, *radius, caps)?;
                (r.upper_bound, r.exactness)
            }
            CandidateMode::Orbit(v) => {
                let chk = verify_orbit_generates(&c.group, &c.lattice, v, caps.orbit)?;
                if !chk.generates {
                    return Err(Error::HypothesisNotMet(format!("orbit of {v} does not generate for {}", c.label)));
                }
                (BigInt::from(chk.orbit_size), Exactness::UpperOnly)
            }
        };
        outcomes.push(CandidateOutcome { label: c.label.clone(), value, exactness });
    }
    let maximum = outcomes.iter().map(|o| o.value.clone()).max().unwrap_or_default();
    Ok(DimensionMaximum { n, outcomes, maximum, conditional_on_candidates: true })
}
