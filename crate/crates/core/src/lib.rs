//! Numerical laboratory for Dirichlet L-functions and primes in arithmetic
//! progressions.
//!
//! The crate computes Chebyshev sums over progressions from an exact
//! segmented sieve, enumerates Dirichlet characters, evaluates L-functions
//! at double-double precision, locates and audits critical-line zeros, and
//! assembles the explicit-formula sums, q-averaged aggregates and
//! limiting-distribution moments built from them.

pub mod aggregates;
pub mod arith;
pub mod characters;
pub mod constants;
pub mod distribution;
pub mod error;
pub mod explicit;
pub mod iteration;
pub mod lfunc;
pub mod precision;

pub use error::{LabError, Result};
