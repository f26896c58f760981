//! The affine map that improves the exponent of the z-count bound each time
//! the hypothesis is reinserted, its iterates and its stopping index.

use crate::error::{LabError, Result};
use serde::Serialize;

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.5 && eta < 1.0 {
        Ok(())
    } else {
        Err(LabError::domain(format!("eta must lie in (1/2, 1), got {eta}")))
    }
}

/// `2 - 1/eta - t (1 - 1/eta)`.
pub fn f_map(eta: f64, t: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(step(eta, t))
}

fn step(eta: f64, t: f64) -> f64 {
    let inv = 1.0 / eta;
    2.0 - inv - t * (1.0 - inv)
}

/// `1 - (1/eta - 1)^(n+1)`, the n-th iterate started from `2 - 1/eta`.
pub fn closed_form(eta: f64, n: usize) -> f64 {
    1.0 - (1.0 / eta - 1.0).powi(n as i32 + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct IterationTrace {
    pub eta: f64,
    /// Iterates `f^n(2 - 1/eta)` for `n = 0..=n_max`.
    pub values: Vec<f64>,
    /// First `n` with value above 1/2.
    pub n_stop: Option<usize>,
    /// Largest deviation from the closed form.
    pub closed_form_check: f64,
    /// Set when the stopping index was not reached.
    pub truncated: bool,
}

pub fn iterate_trace(eta: f64, n_max: usize) -> Result<IterationTrace> {
    check_eta(eta)?;
    let mut values = Vec::with_capacity(n_max + 1);
    let mut t = 2.0 - 1.0 / eta;
    let mut check: f64 = 0.0;
    for n in 0..=n_max {
        if n > 0 {
            t = step(eta, t);
        }
        check = check.max((t - closed_form(eta, n)).abs());
        values.push(t);
    }
    let n_stop = values.iter().position(|&v| v > 0.5);
    Ok(IterationTrace {
        eta,
        values,
        n_stop,
        closed_form_check: check,
        truncated: n_stop.is_none(),
    })
}

/// `min(1/2, f(kappa))`: the exponent after one more pass.
pub fn kappa_update(eta: f64, kappa: f64) -> Result<f64> {
    check_eta(eta)?;
    if !(kappa > 0.0 && kappa < 0.5) {
        return Err(LabError::domain(format!("kappa must lie in (0, 1/2), got {kappa}")));
    }
    Ok(step(eta, kappa).min(0.5))
}
