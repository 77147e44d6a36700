use super::GF2Poly;

/// Subspace of F_2^n in reduced echelon form, vectors stored as bitsets.
/// The pivot of a row is its lowest set coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Subspace {
    n: usize,
    rows: Vec<GF2Poly>,
}

impl F2Subspace {
    pub fn zero(n: usize) -> Self {
        F2Subspace { n, rows: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        F2Subspace { n, rows: (0..n).map(GF2Poly::monomial).collect() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a GF2Poly>>(n: usize, vs: I) -> Self {
        let mut s = Self::zero(n);
        for v in vs {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[GF2Poly] {
        &self.rows
    }

    fn reduce(&self, mut v: GF2Poly) -> GF2Poly {
        for r in &self.rows {
            if v.coeff(r.low_degree().unwrap()) {
                v.add_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &GF2Poly) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn insert(&mut self, v: GF2Poly) -> bool {
        debug_assert!(v.degree().map_or(true, |d| d < self.n));
        let v = self.reduce(v);
        let Some(piv) = v.low_degree() else { return false };
        for r in self.rows.iter_mut() {
            if r.coeff(piv) {
                r.add_assign(&v);
            }
        }
        let pos = self.rows.partition_point(|r| r.low_degree().unwrap() < piv);
        self.rows.insert(pos, v);
        true
    }

    pub fn sum(&self, other: &F2Subspace) -> F2Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn contains_space(&self, other: &F2Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// All 2^dim elements; only sensible for small dimensions.
    pub fn elements(&self) -> Vec<GF2Poly> {
        assert!(self.dim() < 24, "too many elements to list");
        (0u32..1 << self.dim())
            .map(|mask| {
                let mut v = GF2Poly::zero();
                for (i, r) in self.rows.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.add_assign(r);
                    }
                }
                v
            })
            .collect()
    }

    /// Image under a coordinate permutation: coordinate j goes to perm[j].
    pub fn permuted(&self, perm: &[usize]) -> F2Subspace {
        let vs: Vec<GF2Poly> = self
            .rows
            .iter()
            .map(|r| GF2Poly::from_exponents(&r.exponents().into_iter().map(|j| perm[j]).collect::<Vec<_>>()))
            .collect();
        F2Subspace::from_vectors(self.n, &vs)
    }
}
