//! Complex log-gamma by the Stirling series.

use super::bernoulli::stirling_coefficient;
use super::complex::ComplexValue;
use super::dd::Dd;

/// Real part the argument is shifted to before the asymptotic series is used.
const SHIFT_TARGET: f64 = 20.0;

/// `log Gamma(z)` up to a multiple of `2 pi i`; `exp` of the result is
/// `Gamma(z)` to about 1e-30 relative. Poles (non-positive integers) give
/// non-finite output.
pub fn ln_gamma(z: ComplexValue) -> ComplexValue {
    let mut w = z;
    let mut prod = ComplexValue::ONE;
    let mut shifted = false;
    while w.re.hi < SHIFT_TARGET {
        prod *= w;
        w = w + Dd::ONE;
        shifted = true;
    }
    let half_ln_two_pi = Dd::TWO_PI.ln().ldexp(-1);
    let ln_w = w.ln();
    let mut acc = (w + Dd::from_f64(-0.5)) * ln_w - w + half_ln_two_pi;
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut pow = inv;
    let scale = acc.abs().hi.max(1.0);
    for k in 1..40 {
        let term = pow * stirling_coefficient(k);
        acc += term;
        if term.abs().hi < 1e-34 * scale {
            break;
        }
        pow *= inv2;
    }
    if shifted {
        acc - prod.ln()
    } else {
        acc
    }
}

pub fn gamma(z: ComplexValue) -> ComplexValue {
    ln_gamma(z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let g = gamma(ComplexValue::from_f64(6.0, 0.0));
        assert!((g.re - Dd::from_f64(120.0)).abs().hi < 1e-27);
        assert!(g.im.abs().hi < 1e-27);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma(ComplexValue::from_f64(0.5, 0.0));
        assert!((g.re - Dd::PI.sqrt()).abs().hi < 1e-30);
    }

    #[test]
    fn reflection_on_imaginary_axis() {
        // |Gamma(i y)|^2 = pi / (y sinh(pi y))
        let y = 3.5;
        let g = gamma(ComplexValue::from_f64(0.0, y));
        let py = Dd::PI.mul_f64(y);
        let sinh = (py.exp() - (-py).exp()).ldexp(-1);
        let want = Dd::PI / (sinh.mul_f64(y));
        assert!(((g.norm_sqr() - want) / want).abs().hi < 1e-28);
    }

    #[test]
    fn recurrence_with_large_imaginary_part() {
        let z = ComplexValue::from_f64(0.75, 100.0);
        let lhs = ln_gamma(z + Dd::ONE).exp();
        let rhs = ln_gamma(z).exp() * z;
        assert!(((lhs - rhs).abs() / lhs.abs()).hi < 1e-27);
    }
}
