//! Bernoulli numbers as exact rationals and the double-double coefficient
//! tables derived from them.

use super::dd::Dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Largest even index kept in the tables.
pub const MAX_INDEX: usize = 160;

struct Tables {
    /// B_{2k}/(2k)! for k = 0..=MAX_INDEX/2
    euler_maclaurin: Vec<Dd>,
    /// B_{2k}/(2k(2k-1)) for k = 0..=MAX_INDEX/2 (entry 0 unused)
    stirling: Vec<Dd>,
    /// B_{2k}
    even: Vec<Dd>,
}

fn bigint_to_dd(n: &BigInt) -> Dd {
    let hi = n.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rem = n - float_to_bigint(hi);
    let lo = rem.to_f64().unwrap_or(0.0);
    Dd::from_f64(hi).add_f64(lo)
}

fn float_to_bigint(x: f64) -> BigInt {
    // x is an integer-valued finite double
    let bits = x.to_bits();
    let sign = if (bits >> 63) != 0 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        return BigInt::zero();
    }
    let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let shift = exp - 1075;
    let m = BigInt::from(mant);
    let v = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
    v * sign
}

pub fn rational_to_dd(r: &BigRational) -> Dd {
    bigint_to_dd(r.numer()) / bigint_to_dd(r.denom())
}

/// Exact B_0..=B_n (with B_1 = -1/2).
pub fn bernoulli_rationals(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // B_m = -1/(m+1) sum_{k<m} C(m+1, k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += BigRational::from_integer(binom.clone()) * bk;
            }
            // C(m+1, k+1) = C(m+1, k) * (m+1-k)/(k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let b = bernoulli_rationals(MAX_INDEX);
        let mut euler_maclaurin = Vec::new();
        let mut stirling = Vec::new();
        let mut even = Vec::new();
        let mut fact = BigInt::one();
        for k in 0..=MAX_INDEX / 2 {
            let idx = 2 * k;
            if idx > 0 {
                fact = fact * BigInt::from(idx - 1) * BigInt::from(idx);
            }
            let bk = &b[idx];
            even.push(rational_to_dd(bk));
            euler_maclaurin.push(rational_to_dd(&(bk / BigRational::from_integer(fact.clone()))));
            if k == 0 {
                stirling.push(Dd::ZERO);
            } else {
                let d = BigInt::from(idx) * BigInt::from(idx - 1);
                stirling.push(rational_to_dd(&(bk / BigRational::from_integer(d))));
            }
        }
        Tables {
            euler_maclaurin,
            stirling,
            even,
        }
    })
}

/// B_{2k}/(2k)!.
pub fn euler_maclaurin_coefficient(k: usize) -> Dd {
    tables().euler_maclaurin[k]
}

/// B_{2k}/(2k(2k-1)), the Stirling series coefficient.
pub fn stirling_coefficient(k: usize) -> Dd {
    tables().stirling[k]
}

/// B_{2k}.
pub fn even_bernoulli(k: usize) -> Dd {
    tables().even[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let b = bernoulli_rationals(12);
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
        assert_eq!(b[12], r(-691, 2730));
        assert!(b[7].is_zero());
    }

    #[test]
    fn b50_matches_known_numerator() {
        let b = bernoulli_rationals(50);
        assert_eq!(b[50].numer().to_string(), "495057205241079648212477525");
        assert_eq!(b[50].denom().to_string(), "66");
    }

    #[test]
    fn dd_coefficients() {
        assert!((even_bernoulli(1) - Dd::ONE.div_f64(6.0)).abs().hi < 1e-32);
        assert!((stirling_coefficient(1) - Dd::ONE.div_f64(12.0)).abs().hi < 1e-32);
        assert!((euler_maclaurin_coefficient(2) + Dd::ONE.div_f64(720.0)).abs().hi < 1e-33);
        // B_2k/(2k)! ~ 2 (-1)^{k+1} / (2 pi)^{2k}
        let k = 40;
        let approx = 2.0 / (2.0 * std::f64::consts::PI).powi(2 * k as i32);
        let c = euler_maclaurin_coefficient(k).to_f64();
        assert!((c.abs() / approx - 1.0).abs() < 1e-12);
    }
}
