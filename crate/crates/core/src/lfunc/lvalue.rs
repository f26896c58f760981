//! Dirichlet L-values, the completed function and its rotation to a real
//! function on the critical line.

use super::hurwitz::{EmParams, HurwitzTerms};
use crate::arith::numtheory::gcd;
use crate::characters::DirichletCharacter;
use crate::error::{LabError, Result};
use crate::precision::gamma::ln_gamma;
use crate::precision::{ComplexValue, Dd};

/// Hurwitz terms for every unit `a` mod q, shared by all characters mod q.
#[derive(Clone, Debug)]
pub struct HurwitzBank {
    modulus: u64,
    units: Vec<u64>,
    terms: Vec<HurwitzTerms>,
    ln_q: Dd,
    params: EmParams,
}

impl HurwitzBank {
    /// `capacity` is the number of cached logarithms per shift; evaluations
    /// needing more compute them on the fly.
    pub fn new(q: u64, capacity: usize, params: EmParams) -> Self {
        let units: Vec<u64> = (1..=q).filter(|&a| gcd(a, q) == 1).collect();
        let terms = units
            .iter()
            .map(|&a| HurwitzTerms::new(Dd::from_f64(a as f64).div_f64(q as f64), capacity))
            .collect();
        HurwitzBank {
            modulus: q,
            units,
            terms,
            ln_q: Dd::from_f64(q as f64).ln(),
            params,
        }
    }

    /// Bank sized for evaluations up to height `t_max`.
    pub fn for_height(q: u64, t_max: f64, params: EmParams) -> Self {
        let cap = params.min_shift.max((2.0 * t_max.abs()).ceil() as usize) + 1;
        Self::new(q, cap, params)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn params(&self) -> &EmParams {
        &self.params
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    /// `zeta(s, a/q)` for every unit `a`, in the order of [`units`](Self::units).
    /// At `s = 1` the entries are finite parts; they only combine correctly
    /// for nonprincipal characters.
    pub fn zeta_vector(&self, s: ComplexValue) -> Result<Vec<ComplexValue>> {
        self.terms
            .iter()
            .map(|t| t.evaluate_regularized(s, &self.params).map(|(v, _)| v))
            .collect()
    }

    /// `L(s, chi)` from a precomputed zeta vector.
    pub fn combine(&self, s: ComplexValue, zetas: &[ComplexValue], chi: &DirichletCharacter) -> ComplexValue {
        debug_assert_eq!(chi.modulus(), self.modulus);
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for (&a, z) in self.units.iter().zip(zetas) {
            let v = match chi.angle(a) {
                Some(r) if r.num == 0 => *z,
                Some(r) => r.to_complex() * *z,
                None => continue,
            };
            re += v.re;
            im += v.im;
        }
        let q_pow = (-(s * self.ln_q)).exp();
        ComplexValue::new(re, im) * q_pow
    }

    pub fn l_value(&self, s: ComplexValue, chi: &DirichletCharacter) -> Result<ComplexValue> {
        check_l_pole(s, chi)?;
        let z = self.zeta_vector(s)?;
        Ok(self.combine(s, &z, chi))
    }
}

fn check_l_pole(s: ComplexValue, chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() && s.re == Dd::ONE && s.im == Dd::ZERO {
        return Err(LabError::Pole {
            function: "L(s, principal character)",
            at: "1".into(),
        });
    }
    Ok(())
}

/// `L(s, chi) = q^(-s) sum_a chi(a) zeta(s, a/q)`.
pub fn l_value(s: ComplexValue, chi: &DirichletCharacter) -> Result<ComplexValue> {
    l_value_with(s, chi, &EmParams::default())
}

pub fn l_value_with(s: ComplexValue, chi: &DirichletCharacter, params: &EmParams) -> Result<ComplexValue> {
    check_l_pole(s, chi)?;
    let bank = HurwitzBank::new(chi.modulus(), 0, *params);
    bank.l_value(s, chi)
}

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if !chi.is_primitive() {
        return Err(LabError::domain(format!(
            "{} is imprimitive (conductor {})",
            chi.label(),
            chi.conductor()
        )));
    }
    Ok(())
}

/// `log` of the gamma factor `(q/pi)^((s+a)/2) Gamma((s+a)/2)`, branch unspecified.
pub fn ln_gamma_factor(s: ComplexValue, q: u64, parity: u8) -> ComplexValue {
    let half = (s + Dd::from_f64(parity as f64)).scale_f64(0.5);
    let ln_q_pi = Dd::from_f64(q as f64).ln() - Dd::PI.ln();
    half * ln_q_pi + ln_gamma(half)
}

fn check_gamma_pole(s: ComplexValue, parity: u8) -> Result<()> {
    // poles of Gamma((s+a)/2) at s = -a, -a-2, ...
    let v = s.re.add_f64(parity as f64);
    if s.im == Dd::ZERO && v.hi <= 0.0 && v.round() == v && (v.hi as i64) % 2 == 0 {
        return Err(LabError::Pole {
            function: "completed L-function gamma factor",
            at: format!("{}", s.re.hi),
        });
    }
    Ok(())
}

/// `Lambda(s, chi) = (q/pi)^((s+a)/2) Gamma((s+a)/2) L(s, chi)` for primitive chi.
pub fn completed_l(s: ComplexValue, chi: &DirichletCharacter) -> Result<ComplexValue> {
    require_primitive(chi)?;
    check_gamma_pole(s, chi.parity())?;
    let l = l_value(s, chi)?;
    Ok(ln_gamma_factor(s, chi.modulus(), chi.parity()).exp() * l)
}

/// The real-valued rotation `Z(t) = e^(i theta(t)) L(1/2 + i t, chi)`.
#[derive(Clone, Debug)]
pub struct HardyRotation {
    chi: DirichletCharacter,
    /// Half the argument of the root number.
    half_root_phase: Dd,
    root_number: ComplexValue,
}

impl HardyRotation {
    pub fn new(chi: &DirichletCharacter) -> Result<Self> {
        require_primitive(chi)?;
        let eps = chi.root_number()?;
        Ok(HardyRotation {
            chi: chi.clone(),
            half_root_phase: eps.arg().ldexp(-1),
            root_number: eps,
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn root_number(&self) -> ComplexValue {
        self.root_number
    }

    /// Phase `theta(t)`, defined modulo 2 pi.
    pub fn theta(&self, t: Dd) -> Dd {
        let s = ComplexValue::new(Dd::from_f64(0.5), t);
        ln_gamma_factor(s, self.chi.modulus(), self.chi.parity()).im - self.half_root_phase
    }

    /// Rotate an L-value at `1/2 + i t`.
    pub fn rotate(&self, t: Dd, l: ComplexValue) -> ComplexValue {
        ComplexValue::cis(self.theta(t)) * l
    }

    pub fn z(&self, t: Dd) -> Result<ComplexValue> {
        let s = ComplexValue::new(Dd::from_f64(0.5), t);
        Ok(self.rotate(t, l_value(s, &self.chi)?))
    }
}
