//! Double-double real arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits (about 32 decimal digits) of significand. The basic
//! operations follow the error-free transformations of Dekker and Knuth;
//! the transcendental functions reduce their argument and then use Taylor
//! series or one Newton step from the `f64` result.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Unit roundoff of the double-double format, 2^-104.
pub const DD_EPSILON: f64 = 4.930380657631324e-32;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

// requires |a| >= |b|
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    pub const TWO_PI: Dd = Dd {
        hi: std::f64::consts::TAU,
        lo: 2.4492935982947064e-16,
    };
    const TWO_PI_TAIL: f64 = -5.989539619436679e-33;
    pub const HALF_PI: Dd = Dd {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766e-17,
    };
    const HALF_PI_TAIL: f64 = -1.4973849048591698e-33;
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const LN10: Dd = Dd {
        hi: std::f64::consts::LN_10,
        lo: -2.1707562233822494e-16,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion of integers up to 2^106 in magnitude.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        // `hi` rounds `n`; the remainder is exactly representable for |n| < 2^106
        let rem = n - hi as i128;
        let (s, e) = quick_two_sum(hi, rem as f64);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = self.lo.mul_add(b, p2);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let e = e - p2 + self.lo;
        let q2 = (s + e) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_exact(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sqr(self) -> Self {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    /// Multiply by 2^k exactly.
    pub fn ldexp(self, k: i32) -> Self {
        // split so the scale factor itself never overflows
        let mut out = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            out = Dd {
                hi: out.hi * f,
                lo: out.lo * f,
            };
            k -= step;
        }
        out
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    /// Round to the nearest integer (ties away from zero on the leading part).
    pub fn round(self) -> Self {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else if (hi - self.hi).abs() == 0.5 && self.lo != 0.0 {
            // the lower word decides which way the tie goes
            let alt = if self.lo > 0.0 { self.hi.floor() + 1.0 } else { self.hi.floor() };
            Dd { hi: alt, lo: 0.0 }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::new(f64::NAN, f64::NAN);
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let corr = (self - Dd::mul_exact(ax, ax)).hi * (x * 0.5);
        Dd::from_f64(ax).add_f64(corr)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2.mul_f64(k);
        // scale down so the series converges in a handful of terms
        const SQUARINGS: i32 = 9;
        let r = r.ldexp(-SQUARINGS);
        // expm1 by Taylor series
        let mut term = r;
        let mut s = r;
        let mut n = 2.0;
        loop {
            term = (term * r).div_f64(n);
            s += term;
            if term.hi.abs() <= 1e-36 * s.hi.abs().max(1e-300) {
                break;
            }
            n += 1.0;
            if n > 40.0 {
                break;
            }
        }
        // (1+s)^2 - 1 = s (s + 2), which keeps relative accuracy
        for _ in 0..SQUARINGS {
            s = s * s.add_f64(2.0);
        }
        s.add_f64(1.0).ldexp(k as i32)
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            if self.hi == 0.0 {
                return Dd::new(f64::NEG_INFINITY, 0.0);
            }
            return Dd::new(f64::NAN, f64::NAN);
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        // one Newton step on exp(y) = x from the f64 logarithm
        let y = Dd::from_f64(self.hi.ln());
        let y = y + self * (-y).exp() - Dd::ONE;
        y
    }

    /// `ln(1 + self)` without cancellation for small arguments.
    pub fn ln_1p(self) -> Self {
        if self.hi.abs() > 1e-3 {
            return self.add_f64(1.0).ln();
        }
        // atanh series: ln(1+x) = 2 atanh(x / (2 + x))
        let u = self / self.add_f64(2.0);
        let u2 = u.sqr();
        let mut term = u;
        let mut s = u;
        let mut k = 3.0;
        while term.hi.abs() > 1e-36 * s.hi.abs().max(1e-300) && k < 60.0 {
            term = term * u2;
            s += term.div_f64(k);
            k += 2.0;
        }
        s.mul_f64(2.0)
    }

    /// Reduce to `r` with `self = r + j * pi/2`, `|r| <= pi/4`; returns `(r, j mod 4)`.
    fn reduce_quadrant(self) -> (Dd, i64) {
        let z = (self / Dd::TWO_PI).round().hi;
        let mut r = self;
        if z != 0.0 {
            r = r - Dd::mul_exact(z, Dd::TWO_PI.hi) - Dd::mul_exact(z, Dd::TWO_PI.lo);
            r = r.add_f64(-z * Dd::TWO_PI_TAIL);
        }
        let j = (r.hi / Dd::HALF_PI.hi).round();
        if j != 0.0 {
            r = r - Dd::mul_exact(j, Dd::HALF_PI.hi) - Dd::mul_exact(j, Dd::HALF_PI.lo);
            r = r.add_f64(-j * Dd::HALF_PI_TAIL);
        }
        (r, (j as i64).rem_euclid(4))
    }

    fn sin_taylor(r: Dd) -> Dd {
        if r.hi == 0.0 {
            return Dd::ZERO;
        }
        let r2 = r.sqr();
        // Horner in r^2 for sin(r)/r, truncated at r^28/29!
        let mut s = Dd::ONE;
        let mut k = 14.0;
        while k >= 1.0 {
            let denom = (2.0 * k) * (2.0 * k + 1.0);
            s = Dd::ONE - (s * r2).div_f64(denom);
            k -= 1.0;
        }
        s * r
    }

    fn cos_taylor(r: Dd) -> Dd {
        let r2 = r.sqr();
        let mut c = Dd::ONE;
        let mut k = 14.0;
        while k >= 1.0 {
            let denom = (2.0 * k - 1.0) * (2.0 * k);
            c = Dd::ONE - (c * r2).div_f64(denom);
            k -= 1.0;
        }
        c
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        if !self.is_finite() {
            return (Dd::new(f64::NAN, f64::NAN), Dd::new(f64::NAN, f64::NAN));
        }
        let (r, j) = self.reduce_quadrant();
        let s = Dd::sin_taylor(r);
        let c = Dd::cos_taylor(r);
        match j {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    /// Four-quadrant arctangent of `y / x`.
    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if x.hi == 0.0 && y.hi == 0.0 {
            return Dd::ZERO;
        }
        let theta = Dd::from_f64(y.hi.atan2(x.hi));
        let (s, c) = theta.sin_cos();
        let r = (x.sqr() + y.sqr()).sqrt();
        // theta_true - theta ~ sin(theta_true - theta) = (y c - x s) / r
        theta + (y * c - x * s) / r
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn powf(self, e: Dd) -> Dd {
        (e * self.ln()).exp()
    }

    /// Decimal representation with `digits` significant digits, positional
    /// notation when the exponent is moderate.
    pub fn to_decimal(self, digits: usize) -> String {
        if self.is_nan() {
            return "NaN".to_string();
        }
        if !self.is_finite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.hi == 0.0 {
            return "0".to_string();
        }
        let digits = digits.clamp(1, 34);
        let neg = self.hi < 0.0;
        let x = self.abs();
        let mut e10 = x.hi.log10().floor() as i32;
        let mut m = x / pow10(e10);
        // fix an off-by-one in the f64 estimate
        if m.hi >= 10.0 {
            m = m.div_f64(10.0);
            e10 += 1;
        } else if m.hi < 1.0 {
            m = m.mul_f64(10.0);
            e10 -= 1;
        }
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = m.floor().hi.clamp(0.0, 9.0);
            ds.push(d as u8);
            m = (m.add_f64(-d)).mul_f64(10.0);
        }
        // round half up on the guard digit
        let guard = ds.pop().unwrap_or(0);
        if guard >= 5 {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e10 += 1;
                    ds.pop();
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let digit_str: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
        if (-6..=21).contains(&e10) {
            if e10 < 0 {
                out.push_str("0.");
                for _ in 0..(-e10 - 1) {
                    out.push('0');
                }
                out.push_str(&digit_str);
            } else {
                let int_len = (e10 + 1) as usize;
                if int_len >= digit_str.len() {
                    out.push_str(&digit_str);
                    for _ in digit_str.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&digit_str[..int_len]);
                    out.push('.');
                    out.push_str(&digit_str[int_len..]);
                }
            }
            trim_fraction(out)
        } else {
            out.push_str(&digit_str[..1]);
            if digit_str.len() > 1 {
                out.push('.');
                out.push_str(&digit_str[1..]);
            }
            let mut out = trim_fraction(out);
            out.push_str(&format!("e{e10}"));
            out
        }
    }

    /// Parse a decimal string (optional sign, digits, point, exponent).
    pub fn parse_decimal(s: &str) -> Option<Dd> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let (neg, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let mut value = Dd::ZERO;
        let mut scale = exp;
        let mut seen_point = false;
        let mut seen_digit = false;
        let mut sig = 0;
        for ch in mant.chars() {
            match ch {
                '.' if !seen_point => seen_point = true,
                '0'..='9' => {
                    seen_digit = true;
                    let d = ch as u8 - b'0';
                    if sig < 34 {
                        value = value.mul_f64(10.0).add_f64(d as f64);
                        if value.hi != 0.0 {
                            sig += 1;
                        }
                        if seen_point {
                            scale -= 1;
                        }
                    } else if !seen_point {
                        scale += 1;
                    }
                }
                _ => return None,
            }
        }
        if !seen_digit {
            return None;
        }
        let v = if scale >= 0 {
            value * pow10(scale)
        } else {
            value / pow10(-scale)
        };
        Some(if neg { -v } else { v })
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn pow10(e: i32) -> Dd {
    if e >= 0 {
        Dd::from_f64(10.0).powi(e)
    } else {
        Dd::from_f64(10.0).powi(-e).recip()
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32);
        f.write_str(&self.to_decimal(digits))
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        self.add_f64(b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self.add_f64(-b)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        self.mul_f64(b)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        self.div_f64(b)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl AddAssign<f64> for Dd {
    #[inline]
    fn add_assign(&mut self, b: f64) {
        *self = self.add_f64(b);
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl DivAssign for Dd {
    #[inline]
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

impl Sum<f64> for Dd {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        (a - b).abs().hi <= tol * b.abs().hi.max(1e-300)
    }

    #[test]
    fn pi_identities() {
        let (s, c) = Dd::PI.ldexp(-2).sin_cos();
        let half = Dd::from_f64(2.0).sqrt().div_f64(2.0);
        assert!(close(s, half, 1e-31));
        assert!(close(c, half, 1e-31));
        assert!((Dd::PI.sin()).abs().hi < 1e-31);
        assert!(close(Dd::PI.mul_f64(1000.5).sin(), Dd::ONE, 1e-29));
    }

    #[test]
    fn exp_ln_constants() {
        let e = Dd::ONE.exp();
        let e_ref = Dd::new(std::f64::consts::E, 1.4456468917292502e-16);
        assert!(close(e, e_ref, 1e-31));
        assert!(close(Dd::from_f64(2.0).ln(), Dd::LN2, 1e-31));
        assert!(close(Dd::from_f64(10.0).ln(), Dd::LN10, 1e-31));
    }

    #[test]
    fn sqrt_two_squared() {
        let r = Dd::from_f64(2.0).sqrt();
        assert!(close(r.sqr(), Dd::from_f64(2.0), 1e-31));
    }

    #[test]
    fn atan2_quadrants() {
        let one = Dd::ONE;
        assert!(close(Dd::atan2(one, one), Dd::PI.ldexp(-2), 1e-31));
        assert!(close(Dd::atan2(-one, -one), -Dd::PI.mul_f64(0.75), 1e-31));
        assert!(close(Dd::atan2(Dd::ZERO, -one), Dd::PI, 1e-31));
    }

    #[test]
    fn decimal_round_trip_of_pi() {
        let s = Dd::PI.to_decimal(32);
        assert_eq!(s, "3.1415926535897932384626433832795");
        let back = Dd::parse_decimal(&s).unwrap();
        assert!(close(back, Dd::PI, 1e-31));
    }

    #[test]
    fn decimal_small_and_large() {
        assert_eq!(Dd::from_f64(0.001).to_decimal(5), "0.001");
        assert_eq!(Dd::from_f64(-1234.5).to_decimal(8), "-1234.5");
        assert_eq!(Dd::from_f64(1e30).to_decimal(3), "1e30");
        assert_eq!(Dd::parse_decimal("1.5e3").unwrap().hi, 1500.0);
        assert!(Dd::parse_decimal("abc").is_none());
    }

    #[test]
    fn ln_1p_small() {
        let x = Dd::from_f64(1e-10);
        let want = x - x.sqr().div_f64(2.0) + (x.sqr() * x).div_f64(3.0);
        assert!(close(x.ln_1p(), want, 1e-30));
    }

    proptest! {
        #[test]
        fn exp_of_ln_is_identity(x in 1e-3f64..1e6) {
            let d = Dd::from_f64(x);
            prop_assert!(close(d.ln().exp(), d, 1e-30));
        }

        #[test]
        fn pythagoras(x in -2000.0f64..2000.0) {
            let (s, c) = Dd::from_f64(x).sin_cos();
            prop_assert!((s.sqr() + c.sqr() - Dd::ONE).abs().hi < 1e-30);
            prop_assert!((s.hi - x.sin()).abs() < 1e-12);
        }

        #[test]
        fn division_inverts_multiplication(a in -1e8f64..1e8, b in 1e-3f64..1e3) {
            let q = Dd::from_f64(a) / Dd::from_f64(b);
            prop_assert!(close(q * Dd::from_f64(b), Dd::from_f64(a), 1e-31));
        }

        #[test]
        fn decimal_round_trip(x in -1e12f64..1e12) {
            let d = Dd::from_f64(x) / Dd::from_f64(7.0);
            let back = Dd::parse_decimal(&d.to_decimal(32)).unwrap();
            prop_assert!(close(back, d, 1e-30));
        }
    }
}
