//! Certified values of the constants in the main term of the q-averaged
//! remainder sum, and the prime sums behind them.
//!
//! A prime sum `sum_{p > P} log p * g(p)` with `g` decreasing is split as
//! `int_P^inf g + error`, and the error is bounded through an explicit
//! estimate `|theta(t) - t| < 0.2 t / log^2 t`, valid for `t >= 3594641`.
//! Below that cutoff the tail is bounded crudely by the integer sum.

use crate::arith::small_primes;
use crate::error::{LabError, Result};
use crate::lfunc::hurwitz::{EmParams, HurwitzTerms};
use crate::lfunc::riemann_zeta;
use crate::precision::{ComplexValue, Dd};
use rayon::prelude::*;

pub const DEFAULT_PRIME_CUTOFF: u64 = 10_000_000;
/// Largest cutoff tried when a requested accuracy is not met.
pub const MAX_PRIME_CUTOFF: u64 = 320_000_000;
/// Threshold above which the explicit Chebyshev-function estimate applies.
pub const THETA_ESTIMATE_FROM: u64 = 3_594_641;
const THETA_ESTIMATE_CONSTANT: f64 = 0.2;

/// Slack for the rounding of `log p` and the double-double accumulation.
const ROUNDING_SLACK: f64 = 1e-15;

pub const DIVERGENT_VARIANT_NOTE: &str = "the variant with sum_p log p/(p - 1) in place of \
     sum_p log p/(p(p - 1)) diverges and is treated as a misprint; C3 = C0 - log 2 is used";

#[derive(Clone, Debug)]
pub struct CertifiedConstant {
    pub name: &'static str,
    pub value: Dd,
    pub error_bound: f64,
    pub digits_requested: u32,
}

impl CertifiedConstant {
    pub fn meets_request(&self) -> bool {
        self.error_bound < 10f64.powi(-(self.digits_requested as i32))
    }
}

/// A prime sum with its certified error.
#[derive(Clone, Copy, Debug)]
pub struct PrimeSum {
    pub value: Dd,
    pub error_bound: f64,
}

/// The three prime sums at one cutoff.
#[derive(Clone, Debug)]
pub struct PrimeSums {
    pub cutoff: u64,
    /// `sum_p log p / (p (p - 1))`.
    pub log_over_pronic: PrimeSum,
    /// `sum_p log p / (p^2 - p + 1)`.
    pub log_over_quadratic: PrimeSum,
    /// `sum_p log(1 + 1/(p (p - 1)))`, the logarithm of the Euler product.
    pub log_euler_product: PrimeSum,
}

/// `E_1(z)` for `z >= 1` by its continued fraction.
fn exp_integral_e1(z: f64) -> f64 {
    let mut b = z + 1.0;
    let mut c = 1.0 / f64::MIN_POSITIVE;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

fn theta_relative_error(p: f64) -> f64 {
    let l = p.ln();
    THETA_ESTIMATE_CONSTANT / (l * l)
}

impl PrimeSums {
    pub fn compute(cutoff: u64) -> Result<Self> {
        if cutoff < 3 {
            return Err(LabError::domain("prime cutoff must be at least 3"));
        }
        if cutoff > MAX_PRIME_CUTOFF {
            return Err(LabError::Resource(format!(
                "prime cutoff {cutoff} exceeds {MAX_PRIME_CUTOFF}"
            )));
        }
        let primes = small_primes(cutoff);
        let partial: Vec<[Dd; 3]> = primes
            .par_chunks(1 << 16)
            .map(|chunk| {
                let mut acc = [Dd::ZERO; 3];
                for &p in chunk {
                    let pf = p as f64;
                    let lp = Dd::from_f64(pf.ln());
                    let pronic = Dd::from_f64(pf) * Dd::from_f64(pf - 1.0);
                    acc[0] += lp / pronic;
                    acc[1] += lp / pronic.add_f64(1.0);
                    acc[2] += pronic.recip().ln_1p();
                }
                acc
            })
            .collect();
        let mut head = [Dd::ZERO; 3];
        for part in partial {
            for k in 0..3 {
                head[k] += part[k];
            }
        }

        let p = cutoff as f64;
        let tails = if cutoff >= THETA_ESTIMATE_FROM {
            // value += int_P^inf g, error <= eps (2 P g(P) + int_P^inf g)
            let eps = theta_relative_error(p);
            let int1 = -(-1.0 / p).ln_1p();
            let int2 = 2.0 / 3f64.sqrt() * (std::f64::consts::FRAC_PI_2 - ((2.0 * p - 1.0) / 3f64.sqrt()).atan());
            let lp = p.ln();
            let int3: f64 = (1..=4).map(|k| exp_integral_e1(k as f64 * lp)).sum();
            let g1 = 1.0 / (p * (p - 1.0));
            let g2 = 1.0 / (p * p - p + 1.0);
            let g3 = g1 / lp;
            // log(1 + u) differs from u by at most u^2/2
            let second_order = 1.0 / (6.0 * (p - 1.0).powi(3));
            [
                (int1, eps * (2.0 * p * g1 + int1)),
                (int2, eps * (2.0 * p * g2 + int2)),
                (int3, eps * (2.0 * p * g3 + int3) + second_order),
            ]
        } else {
            // sum_{n > P} of a decreasing majorant
            let crude_log = p.ln() / (p - 1.0) + (p / (p - 1.0)).ln();
            [(0.0, crude_log), (0.0, crude_log), (0.0, 1.0 / p)]
        };
        let make = |k: usize| PrimeSum {
            value: head[k].add_f64(tails[k].0),
            error_bound: tails[k].1 + ROUNDING_SLACK,
        };
        Ok(PrimeSums {
            cutoff,
            log_over_pronic: make(0),
            log_over_quadratic: make(1),
            log_euler_product: make(2),
        })
    }
}

/// Euler's constant as the finite part of `zeta` at 1.
pub fn euler_gamma() -> Result<Dd> {
    let terms = HurwitzTerms::new(Dd::ONE, 0);
    let (v, _) = terms.evaluate_regularized(ComplexValue::ONE, &EmParams::default())?;
    Ok(v.re)
}

const ZETA_SLACK: f64 = 1e-28;

/// `zeta(2) zeta(3) / zeta(6)`.
pub fn c1_zeta_ratio() -> Result<Dd> {
    let z = |s: f64| riemann_zeta(ComplexValue::from_f64(s, 0.0)).map(|v| v.re);
    Ok(z(2.0)? * z(3.0)? / z(6.0)?)
}

/// The Euler product `prod_p (1 + 1/(p(p-1)))` with its certified error.
pub fn c1_euler_product(sums: &PrimeSums) -> (Dd, f64) {
    let s = sums.log_euler_product;
    let v = s.value.exp();
    // |exp(s + e) - exp(s)| <= exp(s) (exp(|e|) - 1)
    (v, v.hi * s.error_bound.exp_m1() * 1.0000001)
}

/// All four constants at one cutoff.
#[derive(Clone, Debug)]
pub struct ConstantSet {
    pub sums: PrimeSums,
    pub c0: CertifiedConstant,
    pub c1: CertifiedConstant,
    pub c2: CertifiedConstant,
    pub c3: CertifiedConstant,
    pub c1_euler_product: (Dd, f64),
}

impl ConstantSet {
    pub fn at_cutoff(cutoff: u64, digits: u32) -> Result<Self> {
        let sums = PrimeSums::compute(cutoff)?;
        let gamma = euler_gamma()?;
        let c1v = c1_zeta_ratio()?;
        let c1 = CertifiedConstant {
            name: "C1",
            value: c1v,
            error_bound: ZETA_SLACK,
            digits_requested: digits,
        };
        // C0 = (log 2 pi + gamma + S + 1) / 2
        let c0v = (Dd::TWO_PI.ln() + gamma + sums.log_over_pronic.value).add_f64(1.0).div_f64(2.0);
        let c0 = CertifiedConstant {
            name: "C0",
            value: c0v,
            error_bound: 0.5 * sums.log_over_pronic.error_bound + ZETA_SLACK,
            digits_requested: digits,
        };
        // C2 = C1 (gamma - 1 - S')
        let inner = (gamma - sums.log_over_quadratic.value).add_f64(-1.0);
        let c2 = CertifiedConstant {
            name: "C2",
            value: c1v * inner,
            error_bound: c1v.hi * sums.log_over_quadratic.error_bound + inner.hi.abs() * ZETA_SLACK + ZETA_SLACK,
            digits_requested: digits,
        };
        let c3 = CertifiedConstant {
            name: "C3",
            value: c0v - Dd::LN2,
            error_bound: c0.error_bound,
            digits_requested: digits,
        };
        let c1_euler_product = c1_euler_product(&sums);
        Ok(ConstantSet {
            sums,
            c0,
            c1,
            c2,
            c3,
            c1_euler_product,
        })
    }

    /// Doubles the cutoff from the default until every bound is below
    /// `10^-digits`.
    pub fn certified(digits: u32) -> Result<Self> {
        let mut cutoff = DEFAULT_PRIME_CUTOFF;
        loop {
            let set = Self::at_cutoff(cutoff, digits)?;
            if set.all().iter().all(|c| c.meets_request()) {
                return Ok(set);
            }
            if cutoff * 2 > MAX_PRIME_CUTOFF {
                return Err(LabError::Resource(format!(
                    "{digits} digits need a prime cutoff beyond {MAX_PRIME_CUTOFF}"
                )));
            }
            cutoff *= 2;
        }
    }

    pub fn all(&self) -> [&CertifiedConstant; 4] {
        [&self.c0, &self.c1, &self.c2, &self.c3]
    }
}

pub fn c0(digits: u32) -> Result<CertifiedConstant> {
    ConstantSet::certified(digits).map(|s| s.c0)
}

pub fn c1(digits: u32) -> Result<CertifiedConstant> {
    ConstantSet::certified(digits).map(|s| s.c1)
}

pub fn c2(digits: u32) -> Result<CertifiedConstant> {
    ConstantSet::certified(digits).map(|s| s.c2)
}

pub fn c3(digits: u32) -> Result<CertifiedConstant> {
    ConstantSet::certified(digits).map(|s| s.c3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_values() {
        // E1(1) = 0.21938393439552027368, E1(10) = 4.15696892968532e-6
        assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-15);
        assert!((exp_integral_e1(10.0) / 4.156_968_929_685_324e-6 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gamma_matches_literal() {
        let want = Dd::parse_decimal("0.57721566490153286060651209008240243104").unwrap();
        assert!((euler_gamma().unwrap() - want).abs().hi < 1e-30);
    }

    #[test]
    fn small_cutoff_tails_cover_difference() {
        let a = PrimeSums::compute(1_000).unwrap();
        let b = PrimeSums::compute(10_000).unwrap();
        for (x, y) in [
            (a.log_over_pronic, b.log_over_pronic),
            (a.log_over_quadratic, b.log_over_quadratic),
            (a.log_euler_product, b.log_euler_product),
        ] {
            let d = (y.value - x.value).hi;
            assert!(d >= 0.0 && d < x.error_bound);
        }
    }

    #[test]
    fn c2_negative_c3_wired() {
        let s = ConstantSet::at_cutoff(100_000, 4).unwrap();
        assert!(s.c2.value.hi < 0.0);
        assert_eq!(s.c3.value, s.c0.value - Dd::LN2);
    }

    #[test]
    fn bad_cutoff() {
        assert!(PrimeSums::compute(2).is_err());
        assert!(matches!(PrimeSums::compute(MAX_PRIME_CUTOFF + 1), Err(LabError::Resource(_))));
    }
}
