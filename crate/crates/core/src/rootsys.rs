//! Irreducible root systems, their Weyl groups acting on weight coordinates,
//! and the root, weight and intermediate lattices.
//!
//! Cartan matrices follow Humphreys: entry (i, j) is <a_i, a_j>, so the simple
//! root a_i expressed in fundamental weights is row i. Vectors are weight
//! coordinates: v = sum v_i l_i.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::linalg::{hnf, snf, IntMatrix, IntVector, LatticeBasis};
use crate::matgroup::MatGroup;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B => n >= 2,
            Family::C => n >= 3,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.valid_rank(rank) {
            return Err(Error::InvalidRank { family: family.letter(), rank });
        }
        Ok(RootSystemSpec { family, rank })
    }

    /// Every valid spec with rank at most `max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<RootSystemSpec> {
        let fams = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
        let mut out = Vec::new();
        for f in fams {
            for n in 1..=max_rank {
                if f.valid_rank(n) {
                    out.push(RootSystemSpec { family: f, rank: n });
                }
            }
        }
        out
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::KindUnavailable(s.to_string()))?;
        let rest: String = chars.filter(|c| *c != '_').collect();
        let n = rest.parse().map_err(|_| Error::KindUnavailable(s.to_string()))?;
        RootSystemSpec::new(fam, n)
    }
}

/// Humphreys Cartan matrix.
pub fn cartan(spec: RootSystemSpec) -> IntMatrix {
    let n = spec.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match spec.family {
        Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Family::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            // chain 1-3-4-5-6-7-8 with 2 attached to 4
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -1, -3),
    }
    IntMatrix::from_rows_i64(&c)
}

/// Squared root lengths (relative) of the simple roots.
pub fn simple_root_lengths(spec: RootSystemSpec) -> Vec<i64> {
    let n = spec.rank;
    match spec.family {
        Family::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
        Family::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![2, 6],
        _ => vec![2; n],
    }
}

/// Weyl group order by closed form.
pub fn weyl_order_formula(family: Family, n: usize) -> BigInt {
    let n64 = n as u64;
    match family {
        Family::A => factorial(n64 + 1),
        Family::B | Family::C => (BigInt::one() << n) * factorial(n64),
        Family::D => (BigInt::one() << (n - 1)) * factorial(n64),
        Family::E => BigInt::from(match n {
            6 => 51840u64,
            7 => 2903040,
            8 => 696729600,
            _ => panic!("E_{n} is not a root system"),
        }),
        Family::F => BigInt::from(1152),
        Family::G => BigInt::from(12),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum LatticeKind {
    Weight,
    Root,
    /// Type A lattice of index d in the weight lattice.
    Intermediate(usize),
    /// Type D lattice generated by the root lattice and the weight with this index (1, n-1 or n).
    IntermediateD(usize),
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeKind::Weight => write!(f, "weight"),
            LatticeKind::Root => write!(f, "root"),
            LatticeKind::Intermediate(d) => write!(f, "intermediate({d})"),
            LatticeKind::IntermediateD(i) => write!(f, "intermediate_D({i})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedLattice {
    pub kind: LatticeKind,
    pub basis: LatticeBasis,
    pub generator_hint: IntVector,
}

/// Connected Dynkin diagram type, used for parabolic subgroup orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentType {
    pub family: Family,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct WeylModel {
    pub spec: RootSystemSpec,
    pub cartan: IntMatrix,
    pub simple_reflections: Vec<IntMatrix>,
    pub weyl_order: BigInt,
    lengths: Vec<i64>,
    group: MatGroup,
}

fn coxeter_exponent(cij: i64, cji: i64) -> u32 {
    match cij * cji {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        x => panic!("not a crystallographic Cartan product: {x}"),
    }
}

fn mat_pow(m: &IntMatrix, e: u32) -> IntMatrix {
    (0..e).fold(IntMatrix::identity(m.rows()), |acc, _| acc.mul(m))
}

impl WeylModel {
    pub fn build(spec: RootSystemSpec) -> Result<WeylModel> {
        let spec = RootSystemSpec::new(spec.family, spec.rank)?;
        let n = spec.rank;
        let c = cartan(spec);
        let lengths = simple_root_lengths(spec);
        // the row convention holds exactly when C diag(|a|^2) is symmetric
        for i in 0..n {
            assert_eq!(c.get(i, i), &BigInt::from(2));
            for j in 0..n {
                let lhs = c.get(i, j) * lengths[j];
                let rhs = c.get(j, i) * lengths[i];
                assert_eq!(lhs, rhs, "Cartan matrix of {spec} is not symmetrized by the root lengths");
            }
        }
        let reflections: Vec<IntMatrix> = (0..n).map(|i| reflection(&c, i)).collect();
        let id = IntMatrix::identity(n);
        for (i, s) in reflections.iter().enumerate() {
            assert_eq!(s.mul(s), id, "s_{i} is not an involution");
            let li = IntVector::unit(n, i);
            let alpha = c.row_vector(i);
            assert_eq!(s.mul_vec(&li), li.sub(&alpha));
        }
        for i in 0..n {
            for j in i + 1..n {
                let cij = c.get(i, j).to_i64().unwrap();
                let cji = c.get(j, i).to_i64().unwrap();
                let m = coxeter_exponent(cij, cji);
                let prod = reflections[i].mul(&reflections[j]);
                assert_eq!(mat_pow(&prod, m), id, "braid relation fails for ({i},{j})");
            }
        }
        let group = MatGroup::new(n, reflections.clone())?.with_label(format!("W({spec})"));
        Ok(WeylModel {
            spec,
            cartan: c,
            simple_reflections: reflections,
            weyl_order: weyl_order_formula(spec.family, n),
            lengths,
            group,
        })
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn group(&self) -> &MatGroup {
        &self.group
    }

    /// Simple root a_i (1-indexed) in weight coordinates.
    pub fn simple_root(&self, i: usize) -> IntVector {
        self.cartan.row_vector(i - 1)
    }

    /// Fundamental weight l_i (1-indexed).
    pub fn fundamental_weight(&self, i: usize) -> IntVector {
        IntVector::unit(self.rank(), i - 1)
    }

    pub fn root_lattice(&self) -> LatticeBasis {
        hnf(&self.cartan)
    }

    pub fn lattice(&self, kind: LatticeKind) -> Result<NamedLattice> {
        let n = self.rank();
        let fam = self.spec.family;
        let unavailable = || Error::KindUnavailable(format!("{kind} for {}", self.spec));
        let root = self.root_lattice();
        let with_weight = |i: usize| {
            let mut l = root.clone();
            l.insert(&self.fundamental_weight(i));
            l
        };
        let (basis, hint) = match kind {
            LatticeKind::Weight => {
                let hint = match fam {
                    Family::A | Family::C => self.fundamental_weight(1),
                    Family::B => self.fundamental_weight(n),
                    Family::D if n % 2 == 0 => self.fundamental_weight(1),
                    Family::D => self.fundamental_weight(n),
                    Family::E if n == 6 => self.fundamental_weight(1),
                    Family::E if n == 7 => self.fundamental_weight(7),
                    _ => self.simple_root(1),
                };
                (LatticeBasis::full(n), hint)
            }
            LatticeKind::Root => {
                let hint = match fam {
                    Family::B => self.simple_root(n),
                    _ => self.simple_root(1),
                };
                (root, hint)
            }
            LatticeKind::Intermediate(d) => {
                if fam != Family::A || d <= 1 || d >= n + 1 || (n + 1) % d != 0 {
                    return Err(unavailable());
                }
                (with_weight(d), self.fundamental_weight(d))
            }
            LatticeKind::IntermediateD(i) => {
                if fam != Family::D {
                    return Err(unavailable());
                }
                let ok = if n % 2 == 0 { i == 1 || i == n - 1 || i == n } else { i == 1 };
                if !ok {
                    return Err(unavailable());
                }
                (with_weight(i), self.fundamental_weight(i))
            }
        };
        Ok(NamedLattice { kind, basis, generator_hint: hint })
    }

    /// Lattice kinds present for this root system.
    pub fn lattice_kinds(&self) -> Vec<LatticeKind> {
        let n = self.rank();
        let mut out = vec![LatticeKind::Weight];
        match self.spec.family {
            Family::A => {
                out.extend((2..n + 1).filter(|d| (n + 1) % d == 0).map(LatticeKind::Intermediate));
            }
            Family::D if n % 2 == 0 => {
                out.extend([1, n - 1, n].map(LatticeKind::IntermediateD));
            }
            Family::D => out.push(LatticeKind::IntermediateD(1)),
            _ => {}
        }
        if !self.cartan.det().is_one() {
            out.push(LatticeKind::Root);
        }
        out
    }

    /// Dominant representative of Wv and the number of reflections applied.
    pub fn dominant(&self, v: &IntVector) -> (IntVector, usize) {
        let fuse = self.weyl_order.to_usize().unwrap_or(usize::MAX).min(100_000_000);
        let mut v = v.clone();
        let mut steps = 0;
        while let Some(i) = v.entries().iter().position(|x| x.is_negative()) {
            v = v.sub(&self.simple_root(i + 1).scale(&v[i]));
            steps += 1;
            assert!(steps <= fuse, "dominance reduction did not terminate");
        }
        (v, steps)
    }

    /// Connected components of the Dynkin subdiagram on `nodes`, with their types.
    pub fn components(&self, nodes: &[usize]) -> Vec<(Vec<usize>, ComponentType)> {
        let mut seen = vec![false; self.rank()];
        let inset: Vec<bool> = (0..self.rank()).map(|i| nodes.contains(&i)).collect();
        let mut out = Vec::new();
        for &s in nodes {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for w in 0..self.rank() {
                    if inset[w] && !seen[w] && !self.cartan.get(u, w).is_zero() {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let t = self.classify(&comp);
            out.push((comp, t));
        }
        out
    }

    fn classify(&self, comp: &[usize]) -> ComponentType {
        let k = comp.len();
        let weight = |a: usize, b: usize| (self.cartan.get(a, b) * self.cartan.get(b, a)).to_i64().unwrap();
        let mut max_mult = 0;
        let mut degree = vec![0usize; k];
        for x in 0..k {
            for y in 0..k {
                if x != y && weight(comp[x], comp[y]) != 0 {
                    degree[x] += 1;
                    max_mult = max_mult.max(weight(comp[x], comp[y]));
                }
            }
        }
        let family = match max_mult {
            0 => Family::A,
            3 => Family::G,
            2 if k == 4 => {
                // F4 has its double bond in the middle of the chain
                let (a, b) = (0..k)
                    .flat_map(|x| (0..k).map(move |y| (x, y)))
                    .find(|&(x, y)| weight(comp[x], comp[y]) == 2)
                    .unwrap();
                if degree[a] == 2 && degree[b] == 2 {
                    Family::F
                } else {
                    Family::B
                }
            }
            2 => Family::B,
            _ => match degree.iter().position(|&d| d == 3) {
                None => Family::A,
                Some(branch) => {
                    let mut arms: Vec<usize> = (0..k)
                        .filter(|&y| weight(comp[branch], comp[y]) != 0 && y != branch)
                        .map(|start| self.arm_length(comp, branch, start))
                        .collect();
                    arms.sort_unstable();
                    match (arms[0], arms[1], arms[2]) {
                        (1, 1, _) => Family::D,
                        (1, 2, 2..=4) => Family::E,
                        other => panic!("unexpected Dynkin arms {other:?}"),
                    }
                }
            },
        };
        ComponentType { family, rank: k }
    }

    fn arm_length(&self, comp: &[usize], branch: usize, start: usize) -> usize {
        let (mut prev, mut cur, mut len) = (branch, start, 1);
        loop {
            let next = (0..comp.len())
                .find(|&y| y != prev && y != cur && !self.cartan.get(comp[cur], comp[y]).is_zero());
            match next {
                Some(y) => {
                    prev = cur;
                    cur = y;
                    len += 1;
                }
                None => return len,
            }
        }
    }

    /// Order of the parabolic subgroup generated by the reflections in `nodes`.
    pub fn parabolic_order(&self, nodes: &[usize]) -> BigInt {
        self.components(nodes)
            .iter()
            .map(|(_, t)| weyl_order_formula(t.family, t.rank))
            .product()
    }

    /// |Wv| via dominance reduction and the parabolic stabilizer of the dominant weight.
    pub fn weyl_orbit_size(&self, v: &IntVector) -> BigInt {
        assert_eq!(v.dim(), self.rank());
        if v.is_zero() {
            return BigInt::one();
        }
        let (d, _) = self.dominant(v);
        let zeros: Vec<usize> = (0..self.rank()).filter(|&i| d[i].is_zero()).collect();
        let stab = self.parabolic_order(&zeros);
        assert!((&self.weyl_order % &stab).is_zero());
        &self.weyl_order / stab
    }

    /// Short roots; every root when simply laced.
    pub fn short_root_count(&self) -> BigInt {
        let min = *self.lengths.iter().min().unwrap();
        let i = self.lengths.iter().position(|&l| l == min).unwrap();
        self.weyl_orbit_size(&self.simple_root(i + 1))
    }

    /// The group written in simple-root coordinates: x -> B^-1 s B x with B = C^T.
    pub fn root_basis_group(&self) -> Result<MatGroup> {
        let n = self.rank();
        let b = self.cartan.transpose();
        let inv = b.inverse_rational().expect("Cartan matrices are nonsingular");
        let gens = self
            .simple_reflections
            .iter()
            .map(|s| {
                let sb = s.mul(&b);
                let mut e = Vec::with_capacity(n * n);
                for row in &inv {
                    for j in 0..n {
                        let x: BigRational =
                            (0..n).map(|k| &row[k] * BigRational::from_integer(sb.get(k, j).clone())).sum();
                        assert!(x.is_integer(), "reflections preserve the root lattice");
                        e.push(x.to_integer());
                    }
                }
                IntMatrix::new(n, n, e).unwrap()
            })
            .collect();
        Ok(MatGroup::new(n, gens)?.with_label(format!("W({}) root basis", self.spec)))
    }

    /// Gram matrix of the simple roots, C diag(|a|^2) scaled to a primitive integral form.
    pub fn root_gram(&self) -> IntMatrix {
        let n = self.rank();
        let mut g = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.cartan.get(i, j) * self.lengths[j]);
            }
        }
        let content = g.entries().iter().fold(BigInt::zero(), |a, x| num_integer::Integer::gcd(&a, x));
        let entries = g.entries().iter().map(|x| x / &content).collect();
        IntMatrix::new(n, n, entries).unwrap()
    }

    /// v lies in the root lattice iff (Pv)_i is divisible by D_ii, where P C^T Q = D.
    pub fn snf_root_membership(&self) -> impl Fn(&IntVector) -> bool {
        let s = snf(&self.cartan.transpose());
        let d = s.diagonal();
        let p = s.p;
        move |v: &IntVector| {
            let w = p.mul_vec(v);
            w.entries().iter().zip(&d).all(|(x, di)| {
                if di.is_zero() {
                    x.is_zero()
                } else {
                    (x % di).is_zero()
                }
            })
        }
    }
}

/// s_i: column i becomes e_i - a_i, all other columns identity.
fn reflection(c: &IntMatrix, i: usize) -> IntMatrix {
    let n = c.rows();
    let mut s = IntMatrix::identity(n);
    for r in 0..n {
        let e = if r == i { BigInt::one() } else { BigInt::zero() };
        s.set(r, i, e - c.get(i, r));
    }
    s
}

