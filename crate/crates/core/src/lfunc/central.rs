//! Central values `L(1/2, chi)` and detection of vanishing there.

use super::hurwitz::EmParams;
use super::lvalue::HurwitzBank;
use crate::characters::{CharacterGroup, DirichletCharacter};
use crate::error::{LabError, Result};
use crate::precision::{ComplexValue, Dd};
use rayon::prelude::*;

pub const DEFAULT_THRESHOLD: f64 = 1e-3;
pub const ESCALATED_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralStatus {
    /// Above the first threshold.
    NonVanishing,
    /// Below the first threshold, above the escalated one.
    ResolvedAfterEscalation,
    /// Below the escalated threshold; reported, never asserted.
    PossibleZero,
}

#[derive(Clone, Debug)]
pub struct CentralValueReport {
    pub label: String,
    pub l_half: ComplexValue,
    pub z_chi: u32,
    /// Threshold of the stage that decided the status.
    pub vanishing_threshold: f64,
    pub status: CentralStatus,
}

impl CentralValueReport {
    pub fn flagged(&self) -> bool {
        self.status == CentralStatus::PossibleZero
    }
}

/// Decide the status from a first value and, when it is small, an
/// escalated recomputation.
pub fn classify<F>(label: String, first: ComplexValue, threshold: f64, escalate: F) -> Result<CentralValueReport>
where
    F: FnOnce() -> Result<ComplexValue>,
{
    if first.abs().hi > threshold {
        return Ok(CentralValueReport {
            label,
            l_half: first,
            z_chi: 0,
            vanishing_threshold: threshold,
            status: CentralStatus::NonVanishing,
        });
    }
    let second = escalate()?;
    let tight = threshold.min(ESCALATED_THRESHOLD);
    if second.abs().hi > tight {
        Ok(CentralValueReport {
            label,
            l_half: second,
            z_chi: 0,
            vanishing_threshold: tight,
            status: CentralStatus::ResolvedAfterEscalation,
        })
    } else {
        Ok(CentralValueReport {
            label,
            l_half: second,
            z_chi: 1,
            vanishing_threshold: tight,
            status: CentralStatus::PossibleZero,
        })
    }
}

fn half() -> ComplexValue {
    ComplexValue::real(Dd::from_f64(0.5))
}

pub fn central_report(chi: &DirichletCharacter, threshold: f64) -> Result<CentralValueReport> {
    if chi.is_principal() {
        return Err(LabError::domain("central reports are for nonprincipal characters"));
    }
    if !(threshold > 0.0) {
        return Err(LabError::domain("vanishing threshold must be positive"));
    }
    let params = EmParams::default();
    let bank = HurwitzBank::new(chi.modulus(), 0, params);
    let first = bank.l_value(half(), chi)?;
    classify(chi.label(), first, threshold, || {
        HurwitzBank::new(chi.modulus(), 0, params.escalated()).l_value(half(), chi)
    })
}

/// Reports for every nonprincipal character of every modulus `q <= q_max`,
/// ordered by modulus then character.
pub fn central_sweep(q_max: u64, threshold: f64) -> Result<Vec<CentralValueReport>> {
    if !(threshold > 0.0) {
        return Err(LabError::domain("vanishing threshold must be positive"));
    }
    let per_q: Vec<Vec<CentralValueReport>> = (1..=q_max)
        .into_par_iter()
        .map(|q| {
            let group = CharacterGroup::new(q)?;
            let params = EmParams::default();
            let bank = HurwitzBank::new(q, 0, params);
            let z = bank.zeta_vector(half())?;
            group
                .characters()
                .iter()
                .filter(|c| !c.is_principal())
                .map(|c| {
                    let first = bank.combine(half(), &z, c);
                    classify(c.label(), first, threshold, || {
                        HurwitzBank::new(q, 0, params.escalated()).l_value(half(), c)
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_q.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_logic() {
        let r = classify("x".into(), ComplexValue::from_f64(0.5, 0.0), 1e-3, || unreachable!()).unwrap();
        assert_eq!(r.z_chi, 0);
        assert_eq!(r.status, CentralStatus::NonVanishing);
        let r = classify("x".into(), ComplexValue::from_f64(1e-4, 0.0), 1e-3, || {
            Ok(ComplexValue::from_f64(1e-4, 0.0))
        })
        .unwrap();
        assert_eq!(r.status, CentralStatus::ResolvedAfterEscalation);
        assert_eq!(r.vanishing_threshold, ESCALATED_THRESHOLD);
        let r = classify("x".into(), ComplexValue::ZERO, 1e-3, || Ok(ComplexValue::ZERO)).unwrap();
        assert_eq!(r.z_chi, 1);
        assert!(r.flagged());
    }

    #[test]
    fn mod_four_value() {
        let chi = DirichletCharacter::from_label("4:1").unwrap();
        let r = central_report(&chi, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(r.z_chi, 0);
        assert!((r.l_half.re.to_f64() - 0.6677).abs() < 1e-3);
    }
}
