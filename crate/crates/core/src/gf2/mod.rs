//! Polynomials over GF(2), the factorization of x^p - 1 by cyclotomic cosets, and
//! the cyclic subspaces and binary sublattices built from it.

mod cyclo;
mod poly;
mod space;

pub use cyclo::{
    binary_sublattices, cp_stable_subspaces, cyclic_shift, cyclotomic_cosets, diag_generators, factor_xp_minus_1, l_even, l_one,
    mod2_image, CyclotomicFactorization, FactorRow,
};
pub use poly::GF2Poly;
pub use space::F2Subspace;

pub use crate::arith::ord2;
