//! Hurwitz zeta by Euler–Maclaurin summation with an explicit remainder bound.

use crate::error::{LabError, Result};
use crate::precision::bernoulli::euler_maclaurin_coefficient;
use crate::precision::{ComplexValue, Dd};

/// Euler–Maclaurin parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmParams {
    /// Lower limit on the number of directly summed terms.
    pub min_shift: usize,
    /// Number of Bernoulli correction terms.
    pub order: usize,
    /// Target for the remainder bound, relative to max(1, |partial sum|).
    pub tol: f64,
}

impl Default for EmParams {
    fn default() -> Self {
        EmParams {
            min_shift: 20,
            order: 25,
            tol: 1e-31,
        }
    }
}

impl EmParams {
    /// Larger shift and order, used to confirm small values.
    pub fn escalated(self) -> Self {
        EmParams {
            min_shift: self.min_shift * 2,
            order: (self.order + 15).min(70),
            tol: self.tol,
        }
    }
}

const MAX_DOUBLINGS: usize = 8;

/// Terms `ln(n + alpha)` (and `(n + alpha)^(-1/2)`) cached for one shift.
#[derive(Clone, Debug)]
pub struct HurwitzTerms {
    alpha: Dd,
    ln: Vec<Dd>,
    rsqrt: Vec<Dd>,
}

impl HurwitzTerms {
    pub fn new(alpha: Dd, capacity: usize) -> Self {
        let mut t = HurwitzTerms {
            alpha,
            ln: Vec::new(),
            rsqrt: Vec::new(),
        };
        t.reserve(capacity);
        t
    }

    pub fn alpha(&self) -> Dd {
        self.alpha
    }

    /// Extend the cache to at least `n + 1` entries.
    pub fn reserve(&mut self, n: usize) {
        for k in self.ln.len()..=n {
            let v = self.alpha.add_f64(k as f64);
            self.ln.push(v.ln());
            self.rsqrt.push(v.sqrt().recip());
        }
    }

    pub fn capacity(&self) -> usize {
        self.ln.len()
    }

    fn ln_at(&self, n: usize) -> Dd {
        match self.ln.get(n) {
            Some(&l) => l,
            None => self.alpha.add_f64(n as f64).ln(),
        }
    }

    /// `(n + alpha)^(-s)`.
    fn power(&self, n: usize, s: ComplexValue) -> ComplexValue {
        let l = self.ln_at(n);
        let (sn, cs) = (-(s.im * l)).sin_cos();
        let m = if s.re.hi == 0.5 && s.re.lo == 0.0 && n < self.rsqrt.len() {
            self.rsqrt[n]
        } else {
            (-(s.re * l)).exp()
        };
        ComplexValue::new(m * cs, m * sn)
    }

    /// Sum with a fixed shift `n_terms`; returns the value and the remainder bound.
    pub fn evaluate_fixed(&self, s: ComplexValue, n_terms: usize, order: usize) -> (ComplexValue, f64) {
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for n in 0..n_terms {
            let p = self.power(n, s);
            re += p.re;
            im += p.im;
        }
        let mut sum = ComplexValue::new(re, im);
        let x = self.alpha.add_f64(n_terms as f64);
        let w = self.power(n_terms, s);
        if is_one(s) {
            // constant term of X^(1-s)/(s-1) at the pole
            sum -= ComplexValue::real(self.ln_at(n_terms));
        } else {
            sum += (w * x) / (s - ComplexValue::ONE);
        }
        sum += w.scale_f64(0.5);
        let inv_x = x.recip();
        let inv_x2 = inv_x.sqr();
        let mut p = s * inv_x;
        for k in 1..=order {
            sum += p * w * euler_maclaurin_coefficient(k);
            let a = s.re.add_f64((2 * k - 1) as f64);
            let b = s.re.add_f64((2 * k) as f64);
            let f = ComplexValue::new(a, s.im) * ComplexValue::new(b, s.im);
            p = p * f * inv_x2;
        }
        let sigma = s.re.hi;
        let m = order + 1;
        let next = euler_maclaurin_coefficient(m).to_f64().abs() * p.abs().hi * w.abs().hi;
        let shifted = ComplexValue::new(s.re.add_f64((2 * m - 1) as f64), s.im).abs().hi;
        let bound = next * shifted / (sigma + (2 * m - 1) as f64);
        (sum, bound)
    }

    /// Initial shift for `s`.
    pub fn shift_for(s: ComplexValue, params: &EmParams) -> usize {
        params.min_shift.max((2.0 * s.im.hi.abs()).ceil() as usize)
    }

    /// `zeta(s, alpha)` with the shift doubled until the remainder bound is
    /// below tolerance. Returns the value and the final bound.
    pub fn evaluate(&self, s: ComplexValue, params: &EmParams) -> Result<(ComplexValue, f64)> {
        check_pole(s)?;
        self.evaluate_unchecked(s, params)
    }

    /// As [`evaluate`](Self::evaluate), but at `s = 1` returns the finite part
    /// `lim (zeta(s, alpha) - 1/(s-1))`, which is what a character sum with
    /// vanishing total needs.
    pub fn evaluate_regularized(&self, s: ComplexValue, params: &EmParams) -> Result<(ComplexValue, f64)> {
        self.evaluate_unchecked(s, params)
    }

    fn evaluate_unchecked(&self, s: ComplexValue, params: &EmParams) -> Result<(ComplexValue, f64)> {
        if s.re.hi + (2 * params.order + 1) as f64 <= 0.0 {
            return Err(LabError::domain(format!(
                "Re(s) = {} too negative for correction order {}",
                s.re.hi, params.order
            )));
        }
        let mut n = Self::shift_for(s, params);
        for _ in 0..=MAX_DOUBLINGS {
            let (v, bound) = self.evaluate_fixed(s, n, params.order);
            if bound <= params.tol * v.abs().hi.max(1.0) {
                return Ok((v, bound));
            }
            n *= 2;
        }
        Err(LabError::Resource(format!(
            "Euler-Maclaurin remainder above tolerance at s = {s:.6}"
        )))
    }
}

fn is_one(s: ComplexValue) -> bool {
    s.re == Dd::ONE && s.im == Dd::ZERO
}

fn check_pole(s: ComplexValue) -> Result<()> {
    if is_one(s) {
        return Err(LabError::Pole {
            function: "Hurwitz zeta",
            at: "1".into(),
        });
    }
    Ok(())
}

/// `zeta(s, alpha) = sum_{n >= 0} (n + alpha)^(-s)` for `0 < alpha <= 1`.
pub fn hurwitz_zeta(s: ComplexValue, alpha: Dd) -> Result<ComplexValue> {
    hurwitz_zeta_with(s, alpha, &EmParams::default()).map(|(v, _)| v)
}

pub fn hurwitz_zeta_with(s: ComplexValue, alpha: Dd, params: &EmParams) -> Result<(ComplexValue, f64)> {
    if !(alpha.hi > 0.0 && alpha <= Dd::ONE) {
        return Err(LabError::domain(format!("Hurwitz shift must lie in (0, 1], got {}", alpha.hi)));
    }
    check_pole(s)?;
    let terms = HurwitzTerms::new(alpha, 0);
    terms.evaluate(s, params)
}

/// Riemann zeta.
pub fn riemann_zeta(s: ComplexValue) -> Result<ComplexValue> {
    hurwitz_zeta(s, Dd::ONE)
}
