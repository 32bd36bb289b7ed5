//! Exact rational cp-factorization of completely positive matrices.
//!
//! Given a rational symmetric matrix in the interior of the completely
//! positive cone, this crate computes an exact certificate
//! `A = sum_i alpha_i v_i v_i^T` with rational `alpha_i >= 0` and
//! nonnegative integer vectors `v_i`, via a cutting-plane LP over the
//! polytope of matrices `B` with `<B, vv^T> >= 1` for small lattice
//! vectors `v`, followed by a Caratheodory reduction and an exact
//! coefficient solve. All arithmetic is arbitrary-precision rational;
//! certificates are verified by an independent checker before they are
//! reported.

pub mod error;
pub mod matrix;
pub mod linalg;
pub mod lp;
pub mod lattice;
pub mod factorize;
pub mod instances;
pub mod verify;
pub mod io;

pub use error::{Error, Result};
pub use matrix::{inner_product, rank_one, svec, svec_weighted, unsvec, unsvec_weighted};
pub use matrix::{LatticeVector, Rational, SymMatrix};
