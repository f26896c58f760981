//! Dirichlet L-functions: Hurwitz zeta, L-values, the completed function,
//! critical-line zeros and central values.

pub mod catalog;
pub mod central;
pub mod hurwitz;
pub mod lvalue;
pub mod zeros;

pub use catalog::ZeroCatalog;
pub use central::{central_report, central_sweep, CentralStatus, CentralValueReport};
pub use hurwitz::{hurwitz_zeta, riemann_zeta, EmParams};
pub use lvalue::{completed_l, l_value, HardyRotation, HurwitzBank};
pub use zeros::{scan_family, scan_modulus, scan_zeros, zero_count_audit, ScanConfig, ZeroSet};

use crate::arith::numtheory::{distinct_prime_factors, max_power_exponent};
use crate::characters::DirichletCharacter;
use crate::precision::{ComplexValue, Dd};

/// `sum_{p | q, p not dividing f} sum_{p^k <= x} chi*(p^k) log p`, so that
/// `psi(x, chi) = psi(x, chi*) - correction`.
pub fn imprimitive_psi_correction(chi: &DirichletCharacter, x: f64) -> ComplexValue {
    let (f, star) = chi.conductor_and_primitive_part();
    if f == chi.modulus() || x < 2.0 {
        return ComplexValue::ZERO;
    }
    let n = x.floor() as u64;
    let mut re = Dd::ZERO;
    let mut im = Dd::ZERO;
    for p in distinct_prime_factors(chi.modulus()) {
        if f % p == 0 {
            continue;
        }
        let Some(r) = star.angle(p) else { continue };
        let lp = Dd::from_f64((p as f64).ln());
        for k in 1..=max_power_exponent(p, n) as u64 {
            let v = crate::characters::angle_to_complex(r.num * k, r.den) * lp;
            re += v.re;
            im += v.im;
        }
    }
    ComplexValue::new(re, im)
}
