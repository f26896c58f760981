//! Sampling the normalized progression remainder on a logarithmic grid and
//! comparing its moments with the values predicted by the zeros.

use crate::arith::numtheory::{euler_phi, gcd};
use crate::arith::psi::ProgressionCounter;
use crate::arith::SieveTable;
use crate::characters::CharacterGroup;
use crate::error::{LabError, Result};
use crate::explicit::ZeroSpectrum;
use crate::lfunc::ZeroCatalog;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_SAMPLES: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    /// Remainder from the sieve.
    T,
    /// Truncated sum over non-real zeros.
    Tstar,
}

impl std::str::FromStr for Which {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(Which::T),
            "Tstar" | "tstar" | "T*" => Ok(Which::Tstar),
            other => Err(LabError::domain(format!("unknown series {other:?}, expected T or Tstar"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LogSampleSeries {
    pub q: u64,
    pub a: u64,
    pub which: Which,
    pub y_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Truncation bound per point for the zero route.
    pub truncation_bounds: Option<Vec<f64>>,
}

impl LogSampleSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Data a series may be drawn from.
#[derive(Clone, Copy, Default)]
pub struct SampleSource<'a> {
    pub table: Option<&'a SieveTable>,
    pub catalog: Option<&'a ZeroCatalog>,
    pub t_height: f64,
}

/// `n` equally spaced points from `y_min` to `y_max` inclusive.
pub fn uniform_grid(y_min: f64, y_max: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(LabError::domain("need at least one sample"));
    }
    if n == 1 {
        return Ok(vec![y_min]);
    }
    if !(y_max > y_min) || !y_min.is_finite() || !y_max.is_finite() {
        return Err(LabError::domain(format!("need y_min < y_max, got {y_min}, {y_max}")));
    }
    let h = (y_max - y_min) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { y_max } else { y_min + h * i as f64 }).collect())
}

pub fn sample_series(
    q: u64,
    a: u64,
    y_min: f64,
    y_max: f64,
    n_samples: usize,
    which: Which,
    source: SampleSource<'_>,
) -> Result<LogSampleSeries> {
    if q == 0 || gcd(a % q, q) != 1 {
        return Err(LabError::domain(format!("residue {a} is not a unit mod {q}")));
    }
    let y_grid = uniform_grid(y_min, y_max, n_samples)?;
    if y_min < 2f64.ln() {
        return Err(LabError::domain("samples need x = e^y >= 2"));
    }
    let mut truncation_bounds = None;
    let values = if q == 1 {
        vec![0.0; y_grid.len()]
    } else {
        match which {
            Which::T => {
                let table = source
                    .table
                    .ok_or_else(|| LabError::Resource("no sieve table for the T series".into()))?;
                let top = y_max.exp().floor() as u64;
                if top > table.range_end() {
                    return Err(LabError::Resource(format!(
                        "e^y_max = {top} exceeds the sieve range {}",
                        table.range_end()
                    )));
                }
                let phi = euler_phi(q) as f64;
                let mut counter = ProgressionCounter::new(table, q)?;
                y_grid
                    .iter()
                    .map(|&y| {
                        let x = y.exp();
                        let n = x.floor() as u64;
                        counter.advance(n);
                        let diff = counter.residue(a) - counter.principal(n).div_f64(phi);
                        -diff.to_f64() / x.sqrt()
                    })
                    .collect()
            }
            Which::Tstar => {
                let catalog = source
                    .catalog
                    .ok_or_else(|| LabError::Resource("no zero catalog for the Tstar series".into()))?;
                let spec = ZeroSpectrum::build(catalog, q, a, source.t_height, false)?;
                truncation_bounds = Some(y_grid.iter().map(|y| spec.bound(y.exp())).collect());
                y_grid.par_iter().map(|y| spec.tstar(y.exp()).0).collect()
            }
        }
    };
    Ok(LogSampleSeries {
        q,
        a,
        which,
        y_grid,
        values,
        truncation_bounds,
    })
}

/// Variance predicted from the zeros up to a height, with the tail beyond.
#[derive(Clone, Debug, Serialize)]
pub struct VarianceEstimate {
    pub q: u64,
    pub t_height: f64,
    pub partial: f64,
    pub tail_estimate: f64,
}

impl VarianceEstimate {
    pub fn total(&self) -> f64 {
        self.partial + self.tail_estimate
    }
}

/// Expected `sum_{|gamma| > T} 1/gamma^2` for one character of conductor f,
/// from the zero density `log(f t / 2 pi) / pi`.
pub fn zero_tail(conductor: u64, t_height: f64) -> f64 {
    let l = (conductor as f64 * t_height / std::f64::consts::TAU).ln();
    (l + 1.0) / (std::f64::consts::PI * t_height)
}

/// `phi(q)^-2 sum_{chi != chi_0} |chi(a)|^2 sum_{|gamma| <= T} m^2/(1/4 + gamma^2)`.
/// The weight is 1 for every unit, so the value does not depend on a.
pub fn theoretical_variance(catalog: &ZeroCatalog, q: u64, a: u64, t_height: f64) -> Result<VarianceEstimate> {
    if q == 0 || gcd(a % q, q) != 1 {
        return Err(LabError::domain(format!("residue {a} is not a unit mod {q}")));
    }
    let group = CharacterGroup::new(q)?;
    let mut partial = 0.0;
    let mut tail = 0.0;
    for chi in group.characters().iter().filter(|c| !c.is_principal()) {
        let weight = chi.evaluate(a as i64).abs().to_f64().powi(2);
        let star = chi.primitive_part();
        for side in [star.clone(), star.conj()] {
            let set = catalog.lookup(&side, t_height)?;
            for (g, m) in set.ordinates.iter().zip(&set.multiplicities) {
                let g = g.to_f64();
                if g <= t_height {
                    partial += weight * (*m as f64).powi(2) / (0.25 + g * g);
                }
            }
        }
        tail += weight * zero_tail(star.modulus(), t_height);
    }
    let phi2 = (euler_phi(q) as f64).powi(2);
    Ok(VarianceEstimate {
        q,
        t_height,
        partial: partial / phi2,
        tail_estimate: tail / phi2,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub theoretical_mean: f64,
    pub theoretical_variance: f64,
    pub tail_estimate: f64,
}

impl MomentReport {
    /// `|mean| <= sqrt(V)`.
    pub fn mean_within_spread(&self) -> bool {
        self.empirical_mean.abs() <= self.theoretical_variance.sqrt()
    }

    /// Empirical variance within a factor of the prediction.
    pub fn variance_within(&self, factor: f64) -> bool {
        let r = self.empirical_variance / self.theoretical_variance;
        r <= factor && r >= 1.0 / factor
    }
}

/// Mean and population variance.
pub fn mean_variance(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

/// Compare a series with the predicted moments. For the T series the
/// predicted mean is the central-zero term of the spectrum.
pub fn moment_report(series: &LogSampleSeries, catalog: &ZeroCatalog, t_height: f64) -> Result<MomentReport> {
    if series.is_empty() {
        return Err(LabError::domain("empty series"));
    }
    let (empirical_mean, empirical_variance) = mean_variance(&series.values);
    let (theoretical_mean, variance) = if series.q == 1 {
        (0.0, VarianceEstimate { q: 1, t_height, partial: 0.0, tail_estimate: 0.0 })
    } else {
        let v = theoretical_variance(catalog, series.q, series.a, t_height)?;
        let mean = match series.which {
            Which::Tstar => 0.0,
            Which::T => ZeroSpectrum::build(catalog, series.q, series.a, t_height, true)?.central,
        };
        (mean, v)
    };
    Ok(MomentReport {
        empirical_mean,
        empirical_variance,
        theoretical_mean,
        theoretical_variance: variance.total(),
        tail_estimate: variance.tail_estimate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChebyshevReport {
    pub psi_threshold: f64,
    /// `1/Psi^2`.
    pub bound: f64,
    /// `Psi phi(q)^(-1/2) (log q)^(1/2)`.
    pub scaled_threshold: f64,
    pub exceedance: Option<f64>,
}

pub fn chebyshev_bound(psi_threshold: f64, q: u64, series: Option<&LogSampleSeries>) -> Result<ChebyshevReport> {
    if !(psi_threshold > 0.0) {
        return Err(LabError::domain("threshold must be positive"));
    }
    if q < 2 {
        return Err(LabError::domain("the scaled threshold needs q >= 2"));
    }
    let scaled = psi_threshold * ((q as f64).ln() / euler_phi(q) as f64).sqrt();
    let exceedance = series.filter(|s| !s.is_empty()).map(|s| {
        s.values.iter().filter(|v| v.abs() >= scaled).count() as f64 / s.len() as f64
    });
    Ok(ChebyshevReport {
        psi_threshold,
        bound: 1.0 / (psi_threshold * psi_threshold),
        scaled_threshold: scaled,
        exceedance,
    })
}

/// `(sin(k pi y) / (k pi y))^2`.
pub fn fejer_kernel(kappa: f64, y: f64) -> f64 {
    let u = kappa * std::f64::consts::PI * y;
    if u.abs() < 1e-8 {
        1.0 - u * u / 3.0
    } else {
        (u.sin() / u).powi(2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub q: u64,
    pub kappa: f64,
    pub t_height: f64,
    pub value: f64,
    /// `1/kappa`, the integral of the test function.
    pub prediction: f64,
    pub characters: usize,
}

/// Average over nonprincipal characters of `sum_gamma eta(gamma log q / 2 pi)`.
pub fn one_level_density(catalog: &ZeroCatalog, q: u64, kappa: f64, t_height: f64) -> Result<DensityReport> {
    if !(kappa > 0.0) {
        return Err(LabError::domain("kappa must be positive"));
    }
    if q < 3 {
        return Err(LabError::domain("no nonprincipal characters below modulus 3"));
    }
    let scale = (q as f64).ln() / std::f64::consts::TAU;
    let group = CharacterGroup::new(q)?;
    let mut total = 0.0;
    let mut count = 0;
    for chi in group.characters().iter().filter(|c| !c.is_principal()) {
        let star = chi.primitive_part();
        for side in [star.clone(), star.conj()] {
            total += catalog
                .lookup(&side, t_height)?
                .upto(t_height)
                .map(|g| fejer_kernel(kappa, g * scale))
                .sum::<f64>();
        }
        count += 1;
    }
    Ok(DensityReport {
        q,
        kappa,
        t_height,
        value: total / count as f64,
        prediction: 1.0 / kappa,
        characters: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = uniform_grid(1.0, 2.0, 5).unwrap();
        assert_eq!(g, vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert!(uniform_grid(2.0, 1.0, 5).is_err());
        assert!(uniform_grid(1.0, 2.0, 0).is_err());
    }

    #[test]
    fn modulus_one_is_zero() {
        let s = sample_series(1, 0, 7.0, 9.0, 10, Which::T, SampleSource::default()).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn capacity_error() {
        let table = SieveTable::build(2, 1000).unwrap();
        let src = SampleSource { table: Some(&table), ..Default::default() };
        assert!(matches!(
            sample_series(4, 1, 3.0, 10.0, 10, Which::T, src),
            Err(LabError::Resource(_))
        ));
    }

    #[test]
    fn series_matches_pointwise_remainder() {
        let table = SieveTable::build(2, 100_000).unwrap();
        let src = SampleSource { table: Some(&table), ..Default::default() };
        let s = sample_series(4, 1, 1000f64.ln(), 100_000f64.ln(), 50, Which::T, src).unwrap();
        for (y, v) in s.y_grid.iter().zip(&s.values) {
            let direct = crate::explicit::remainder_t(&table, y.exp(), 4, 1).unwrap().t_value.unwrap();
            assert!((v - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_series_has_no_variance() {
        let (m, v) = mean_variance(&[0.25; 40]);
        assert_eq!((m, v), (0.25, 0.0));
    }

    #[test]
    fn chebyshev_basics() {
        let r = chebyshev_bound(10.0, 5, None).unwrap();
        assert!((r.bound - 0.01).abs() < 1e-15);
        assert!(chebyshev_bound(1e9, 5, None).unwrap().bound < 1e-17);
        assert!(chebyshev_bound(0.0, 5, None).is_err());
    }

    #[test]
    fn kernel_at_origin() {
        assert_eq!(fejer_kernel(1.0, 0.0), 1.0);
        assert!(fejer_kernel(1.0, 1.0).abs() < 1e-30);
    }

    #[test]
    fn tail_decays() {
        let a = zero_tail(5, 100.0);
        let b = zero_tail(5, 200.0);
        assert!(b < a && b > 0.45 * a);
    }
}
