//! Complex numbers over [`Dd`].

use super::dd::Dd;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Complex value carried at double-double precision.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexValue {
    pub re: Dd,
    pub im: Dd,
}

impl ComplexValue {
    pub const ZERO: ComplexValue = ComplexValue {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: ComplexValue = ComplexValue {
        re: Dd::ONE,
        im: Dd::ZERO,
    };
    pub const I: ComplexValue = ComplexValue {
        re: Dd::ZERO,
        im: Dd::ONE,
    };

    #[inline]
    pub const fn new(re: Dd, im: Dd) -> Self {
        ComplexValue { re, im }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Self {
        ComplexValue {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    #[inline]
    pub fn real(re: Dd) -> Self {
        ComplexValue { re, im: Dd::ZERO }
    }

    #[inline]
    pub fn to_f64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn conj(self) -> Self {
        ComplexValue {
            re: self.re,
            im: -self.im,
        }
    }

    #[inline]
    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn arg(self) -> Dd {
        Dd::atan2(self.im, self.re)
    }

    #[inline]
    pub fn scale(self, k: Dd) -> Self {
        ComplexValue {
            re: self.re * k,
            im: self.im * k,
        }
    }

    #[inline]
    pub fn scale_f64(self, k: f64) -> Self {
        ComplexValue {
            re: self.re.mul_f64(k),
            im: self.im.mul_f64(k),
        }
    }

    /// `e^{i theta}`.
    pub fn cis(theta: Dd) -> Self {
        let (s, c) = theta.sin_cos();
        ComplexValue { re: c, im: s }
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        ComplexValue {
            re: m * c,
            im: m * s,
        }
    }

    /// Principal logarithm.
    pub fn ln(self) -> Self {
        ComplexValue {
            re: self.norm_sqr().ln().ldexp(-1),
            im: self.arg(),
        }
    }

    pub fn powc(self, w: ComplexValue) -> Self {
        (w * self.ln()).exp()
    }

    pub fn recip(self) -> Self {
        let d = self.norm_sqr();
        ComplexValue {
            re: self.re / d,
            im: -self.im / d,
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let im = self.im;
        if im.hi < 0.0 {
            write!(f, "{}-{}i", self.re.to_decimal(digits), (-im).to_decimal(digits))
        } else {
            write!(f, "{}+{}i", self.re.to_decimal(digits), im.to_decimal(digits))
        }
    }
}

impl Neg for ComplexValue {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        ComplexValue {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for ComplexValue {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        ComplexValue {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for ComplexValue {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        ComplexValue {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for ComplexValue {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        ComplexValue {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for ComplexValue {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let d = b.norm_sqr();
        let n = self * b.conj();
        ComplexValue {
            re: n.re / d,
            im: n.im / d,
        }
    }
}

impl Mul<Dd> for ComplexValue {
    type Output = Self;
    #[inline]
    fn mul(self, k: Dd) -> Self {
        self.scale(k)
    }
}

impl Add<Dd> for ComplexValue {
    type Output = Self;
    #[inline]
    fn add(self, k: Dd) -> Self {
        ComplexValue {
            re: self.re + k,
            im: self.im,
        }
    }
}

impl AddAssign for ComplexValue {
    #[inline]
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl SubAssign for ComplexValue {
    #[inline]
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl MulAssign for ComplexValue {
    #[inline]
    fn mul_assign(&mut self, b: Self) {
        *self = *self * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_ln_round_trip() {
        let z = ComplexValue::from_f64(0.3, -7.5);
        let back = z.ln().exp();
        assert!((back - z).abs().hi < 1e-30);
    }

    #[test]
    fn euler_identity() {
        let z = ComplexValue::new(Dd::ZERO, Dd::PI).exp() + Dd::ONE;
        assert!(z.abs().hi < 1e-31);
    }

    #[test]
    fn division() {
        let a = ComplexValue::from_f64(1.0, 2.0);
        let b = ComplexValue::from_f64(-3.0, 0.5);
        let q = a / b;
        assert!((q * b - a).abs().hi < 1e-31);
    }
}
