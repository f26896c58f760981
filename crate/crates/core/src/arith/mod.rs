//! Integer and prime machinery: factorization, the segmented sieve and the
//! Chebyshev sums built on it.

pub mod numtheory;
pub mod psi;
pub mod sieve;

pub use numtheory::{euler_phi, factorize, gcd};
pub use psi::{
    psi_character, psi_principal, psi_progression, psi_progression_streaming, DenseLambda,
    ProgressionCounter, PsiValue, Residue,
};
pub use sieve::{small_primes, SieveConfig, SieveTable};

/// The exact table of prime powers in `[range_start, range_end]`.
pub fn build_sieve(range_start: u64, range_end: u64) -> crate::Result<SieveTable> {
    SieveTable::build(range_start, range_end)
}
