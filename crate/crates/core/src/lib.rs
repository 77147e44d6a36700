//! Exact computations of symmetric ranks of G-lattices.
//!
//! A G-lattice here is a sublattice of Z^n stable under a finite group of
//! unimodular integer matrices acting on column vectors. The symmetric rank is
//! the least size of a G-stable generating set.

pub mod arith;
pub mod bounds;
#[allow(dead_code)]
mod bigstr;
pub mod error;
pub mod gf2;
pub mod linalg;
pub mod matgroup;
pub mod monomial;
pub mod rootsys;
pub mod symrank;
pub mod tables;
pub mod theta;

pub use error::{Error, Result};
pub use matgroup::{MatGroup, Orbit};
pub use linalg::{hnf, snf, Index, IntMatrix, IntVector, LatticeBasis, SmithDecomposition};
