//! Finite subgroups of GL_n(Z) given by generators.

use std::collections::{HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{IntMatrix, IntVector, LatticeBasis};
use crate::{Error, Result};

pub const DEFAULT_CAP: usize = 10_000_000;

/// Scalar used by the dense fast paths. Arithmetic returns `None` on overflow.
pub(crate) trait Scalar: Clone + Eq + Hash + Ord + Debug {
    fn zero() -> Self;
    fn mul_add(acc: &Self, a: &Self, b: &Self) -> Option<Self>;
    fn is_nil(&self) -> bool;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn mul_add(acc: &Self, a: &Self, b: &Self) -> Option<Self> {
        acc.checked_add(a.checked_mul(*b)?)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn mul_add(acc: &Self, a: &Self, b: &Self) -> Option<Self> {
        Some(acc + a * b)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
}

pub(crate) fn mat_vec<S: Scalar>(m: &[S], n: usize, v: &[S]) -> Option<Vec<S>> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = S::zero();
        for (a, b) in m[i * n..(i + 1) * n].iter().zip(v) {
            if !a.is_nil() && !b.is_nil() {
                acc = S::mul_add(&acc, a, b)?;
            }
        }
        out.push(acc);
    }
    Some(out)
}

fn mat_mul<S: Scalar>(a: &[S], b: &[S], n: usize) -> Option<Vec<S>> {
    let mut out = vec![S::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_nil() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_nil() {
                    out[i * n + j] = S::mul_add(&out[i * n + j], x, y)?;
                }
            }
        }
    }
    Some(out)
}

enum Bfs<T> {
    Done(Vec<T>),
    Overflow,
}

/// BFS closure of `start` under `step(generator, item)`; deterministic order.
fn bfs<T: Clone + Eq + Hash>(
    start: T,
    ngens: usize,
    cap: usize,
    what: &'static str,
    mut step: impl FnMut(usize, &T) -> Option<T>,
) -> Result<Bfs<T>> {
    let mut seen: HashSet<T> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for g in 0..ngens {
            let Some(y) = step(g, &x) else { return Ok(Bfs::Overflow) };
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { what, cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        order.push(x);
    }
    Ok(Bfs::Done(order))
}

fn small_entries(m: &IntMatrix) -> Option<Vec<i64>> {
    m.entries().iter().map(|x| x.to_i64().filter(|v| v.abs() < 1 << 31)).collect()
}

/// Orbit of a vector: sorted elements, lexicographically least representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: IntVector,
    pub elements: Vec<IntVector>,
    pub size: usize,
}

impl Orbit {
    fn from_elements(mut elements: Vec<IntVector>) -> Orbit {
        elements.sort();
        Orbit { representative: elements[0].clone(), size: elements.len(), elements }
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn span(&self) -> LatticeBasis {
        LatticeBasis::from_vectors(self.representative.dim(), &self.elements)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    CertifiedIrreducible,
    NotCertified,
}

#[derive(Clone, Debug)]
pub struct MatGroup {
    dim: usize,
    generators: Vec<IntMatrix>,
    gram: Option<IntMatrix>,
    label: Option<String>,
    elements: OnceLock<Vec<IntMatrix>>,
}

/// Wire form: `{"dim": n, "generators": [...], "gram": ..., "label": ...}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub dim: usize,
    pub generators: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatGroup {
    pub fn new(dim: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.rows() });
            }
            if !g.is_unimodular() {
                return Err(Error::NonUnimodularGenerator(i));
            }
        }
        Ok(MatGroup { dim, generators, gram: None, label: None, elements: OnceLock::new() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_gram(mut self, gram: IntMatrix) -> Result<Self> {
        if gram.rows() != self.dim || !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: self.dim, got: gram.rows() });
        }
        self.gram = Some(gram);
        Ok(self)
    }

    pub fn from_spec(spec: GroupSpec) -> Result<Self> {
        let mut g = MatGroup::new(spec.dim, spec.generators)?;
        if let Some(x) = spec.gram {
            g = g.with_gram(x)?;
        }
        g.label = spec.label;
        Ok(g)
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            dim: self.dim,
            generators: self.generators.clone(),
            gram: self.gram.clone(),
            label: self.label.clone(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_spec(serde_json::from_str(s)?)
    }

    pub fn trivial(dim: usize) -> Self {
        MatGroup::new(dim, Vec::new()).expect("no generators")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn gram(&self) -> Option<&IntMatrix> {
        self.gram.as_ref()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Subgroup generated by the listed generators.
    pub fn subgroup(&self, which: &[usize]) -> MatGroup {
        let gens = which.iter().map(|&i| self.generators[i].clone()).collect();
        MatGroup::new(self.dim, gens).expect("generators already validated")
    }

    /// All elements, in BFS order from the identity. Cached after the first success.
    pub fn closure(&self, cap: usize) -> Result<&[IntMatrix]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let els = self.compute_closure(cap)?;
        Ok(self.elements.get_or_init(|| els))
    }

    pub fn elements_cached(&self) -> Option<&[IntMatrix]> {
        self.elements.get().map(|v| v.as_slice())
    }

    pub fn order(&self, cap: usize) -> Result<BigInt> {
        Ok(BigInt::from(self.closure(cap)?.len()))
    }

    fn compute_closure(&self, cap: usize) -> Result<Vec<IntMatrix>> {
        let n = self.dim;
        let id = IntMatrix::identity(n);
        let small: Option<Vec<Vec<i64>>> = self.generators.iter().map(small_entries).collect();
        if let Some(gens) = small {
            let start = small_entries(&id).expect("identity fits");
            if let Bfs::Done(els) =
                bfs(start, gens.len(), cap, "group elements", |g, x| mat_mul(&gens[g], x, n))?
            {
                return Ok(els
                    .into_iter()
                    .map(|e| IntMatrix::new(n, n, e.into_iter().map(BigInt::from).collect()).unwrap())
                    .collect());
            }
        }
        let gens: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.entries().to_vec()).collect();
        match bfs(id.entries().to_vec(), gens.len(), cap, "group elements", |g, x| {
            mat_mul(&gens[g], x, n)
        })? {
            Bfs::Done(els) => Ok(els.into_iter().map(|e| IntMatrix::new(n, n, e).unwrap()).collect()),
            Bfs::Overflow => unreachable!("big integers do not overflow"),
        }
    }

    fn check_dim(&self, v: &IntVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        Ok(())
    }

    pub fn orbit(&self, v: &IntVector, cap: usize) -> Result<Orbit> {
        self.check_dim(v)?;
        let n = self.dim;
        let small: Option<Vec<Vec<i64>>> = self.generators.iter().map(small_entries).collect();
        if let (Some(gens), Some(start)) = (small, v.to_i64()) {
            if let Bfs::Done(els) = bfs(start, gens.len(), cap, "orbit elements", |g, x| mat_vec(&gens[g], n, x))? {
                return Ok(Orbit::from_elements(els.iter().map(|e| IntVector::from_i64(e)).collect()));
            }
        }
        let gens: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.entries().to_vec()).collect();
        match bfs(v.entries().to_vec(), gens.len(), cap, "orbit elements", |g, x| mat_vec(&gens[g], n, x))? {
            Bfs::Done(els) => Ok(Orbit::from_elements(els.into_iter().map(IntVector::new).collect())),
            Bfs::Overflow => unreachable!("big integers do not overflow"),
        }
    }

    pub fn orbit_span(&self, v: &IntVector, cap: usize) -> Result<LatticeBasis> {
        Ok(self.orbit(v, cap)?.span())
    }

    /// Smallest G-stable lattice containing `vs`, by saturating a basis under the generators.
    /// Equals the span of the orbits without materializing them.
    pub fn invariant_span(&self, vs: &[IntVector]) -> Result<LatticeBasis> {
        for v in vs {
            self.check_dim(v)?;
        }
        let mut l = LatticeBasis::from_vectors(self.dim, vs);
        loop {
            let mut grew = false;
            for b in l.basis_vectors() {
                for g in &self.generators {
                    grew |= l.insert(&g.mul_vec(&b));
                }
            }
            if !grew {
                return Ok(l);
            }
        }
    }

    /// Index of the first generator that does not map `l` into itself.
    pub fn unstable_generator(&self, l: &LatticeBasis) -> Option<usize> {
        let basis = l.basis_vectors();
        self.generators.iter().position(|g| basis.iter().any(|b| !l.member(&g.mul_vec(b))))
    }

    pub fn is_stable(&self, l: &LatticeBasis) -> bool {
        self.unstable_generator(l).is_none()
    }

    /// |G| / |Gv|.
    pub fn stabilizer_order(&self, v: &IntVector, cap: usize) -> Result<BigInt> {
        let order = self.order(cap)?;
        let size = BigInt::from(self.orbit(v, cap)?.size);
        assert!((&order % &size).is_zero(), "orbit size must divide the group order");
        Ok(order / size)
    }

    /// Generators h replaced by a h a^-1; a Gram form X becomes a^-T X a^-1.
    pub fn conjugate(&self, a: &IntMatrix) -> Result<MatGroup> {
        if a.rows() != self.dim || !a.is_square() {
            return Err(Error::DimensionMismatch { expected: self.dim, got: a.rows() });
        }
        let inv = a.inverse().ok_or(Error::NonUnimodularConjugator)?;
        let gens = self.generators.iter().map(|h| a.mul(h).mul(&inv)).collect();
        let mut g = MatGroup::new(self.dim, gens)?;
        g.gram = self.gram.as_ref().map(|x| inv.transpose().mul(x).mul(&inv));
        g.label = self.label.clone();
        Ok(g)
    }

    /// Dimension over Q of the commutant {X : Xh = hX for every generator h}.
    pub fn commutant_dimension(&self) -> usize {
        let n = self.dim;
        if self.generators.is_empty() {
            return n * n;
        }
        // unknown X[a][b] sits in column a*n + b; one row per entry (i,j) per generator
        let mut eqs = IntMatrix::zero(self.generators.len() * n * n, n * n);
        for (k, h) in self.generators.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let row = k * n * n + i * n + j;
                    // (Xh)_ij = sum_m X[i][m] h[m][j];  (hX)_ij = sum_m h[i][m] X[m][j]
                    for m in 0..n {
                        let c1 = i * n + m;
                        let t = eqs.get(row, c1) + h.get(m, j);
                        eqs.set(row, c1, t);
                        let c2 = m * n + j;
                        let t = eqs.get(row, c2) - h.get(i, m);
                        eqs.set(row, c2, t);
                    }
                }
            }
        }
        n * n - eqs.rank()
    }

    pub fn certify_irreducible(&self) -> Irreducibility {
        if self.commutant_dimension() == 1 {
            Irreducibility::CertifiedIrreducible
        } else {
            Irreducibility::NotCertified
        }
    }

    /// Index of the first generator with h^T X h != X.
    pub fn form_violation(&self, x: &IntMatrix) -> Option<usize> {
        self.generators.iter().position(|h| &h.transpose().mul(x).mul(h) != x)
    }
}

/// Image a·L of a lattice under a unimodular change of coordinates.
pub fn restrict_lattice(l: &LatticeBasis, a: &IntMatrix) -> Result<LatticeBasis> {
    if a.rows() != l.ambient_dim() || !a.is_square() {
        return Err(Error::DimensionMismatch { expected: l.ambient_dim(), got: a.rows() });
    }
    if !a.is_unimodular() {
        return Err(Error::NonUnimodularConjugator);
    }
    Ok(l.image(a))
}
