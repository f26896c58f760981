//! Averages over moduli: the sum S(Q; x) of progression remainders for the
//! residue 1, its rearrangement through the complementary divisor, the
//! absolute discrepancy sum and the average count of central zeros.

use crate::arith::numtheory::{euler_phi, gcd};
use crate::arith::psi::{principal_defect, DenseLambda};
use crate::constants::{ConstantSet, DEFAULT_PRIME_CUTOFF};
use crate::error::{LabError, Result};
use crate::explicit::ZeroSpectrum;
use crate::lfunc::{CentralValueReport, ZeroCatalog};
use crate::precision::Dd;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// One evaluation of S(Q; x) and the three pieces of its rearrangement.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    #[serde(rename = "Q")]
    pub q_bound: f64,
    pub x: f64,
    #[serde(rename = "S_direct")]
    pub s_direct: f64,
    #[serde(rename = "I")]
    pub term_i: f64,
    #[serde(rename = "II")]
    pub term_ii: f64,
    #[serde(skip)]
    pub term_ii_unswitched: f64,
    #[serde(rename = "III")]
    pub term_iii: f64,
    pub main_term: f64,
    pub residual: f64,
}

impl SweepResult {
    /// `|S - (I - II + III)| / (|I| + |II| + |III|)`.
    pub fn identity_defect(&self) -> f64 {
        let scale = self.term_i.abs() + self.term_ii.abs() + self.term_iii.abs();
        let d = (self.s_direct - (self.term_i - self.term_ii + self.term_iii)).abs();
        if scale == 0.0 {
            d
        } else {
            d / scale
        }
    }

    pub fn switch_defect(&self) -> f64 {
        let scale = self.term_ii.abs().max(self.term_ii_unswitched.abs());
        let d = (self.term_ii - self.term_ii_unswitched).abs();
        if scale == 0.0 {
            d
        } else {
            d / scale
        }
    }
}

fn check_range(lambda: &DenseLambda, q_bound: f64, x: f64) -> Result<u64> {
    if !(q_bound >= 2.0 && q_bound < x) {
        return Err(LabError::domain(format!("need 2 <= Q < x, got Q = {q_bound}, x = {x}")));
    }
    let n = x.floor() as u64;
    if n > lambda.limit() {
        return Err(LabError::Resource(format!(
            "x = {x} exceeds the sieved range {}",
            lambda.limit()
        )));
    }
    Ok(n)
}

/// Integers `q` with `lo < q <= hi` for real bounds.
fn integers_above(lo: f64, hi: f64) -> std::ops::RangeInclusive<u64> {
    (lo.floor() as u64 + 1)..=(hi.floor() as u64)
}

fn ordered_sum(parts: Vec<Dd>) -> Dd {
    parts.into_iter().sum()
}

fn psi_at(lambda: &DenseLambda, n: u64) -> Dd {
    lambda.psi_ap(n, 1, 0)
}

/// `-sum_{Q < q <= 2Q} (psi(x; q, 1) - psi(x, chi_0 mod q) / phi(q))`.
pub fn s_direct(lambda: &DenseLambda, q_bound: f64, x: f64) -> Result<f64> {
    let n = check_range(lambda, q_bound, x)?;
    let psi_x = psi_at(lambda, n);
    Ok(-s_terms(lambda, n, psi_x, integers_above(q_bound, 2.0 * q_bound)).to_f64())
}

fn s_terms(lambda: &DenseLambda, n: u64, psi_x: Dd, range: std::ops::RangeInclusive<u64>) -> Dd {
    let parts: Vec<Dd> = range
        .into_par_iter()
        .map(|q| {
            let principal = (psi_x - principal_defect(q, n)).div_f64(euler_phi(q) as f64);
            lambda.psi_ap(n, q, 1) - principal
        })
        .collect();
    ordered_sum(parts)
}

fn progression_sum(lambda: &DenseLambda, n: u64, range: std::ops::RangeInclusive<u64>) -> Dd {
    let parts: Vec<Dd> = range.into_par_iter().map(|q| lambda.psi_ap(n, q, 1)).collect();
    ordered_sum(parts)
}

/// `sum_{1 <= r < (x-1)/Q} (psi(x; r, 1) - psi(rQ + 1; r, 1))`.
pub fn switched_middle_term(lambda: &DenseLambda, q_bound: f64, x: f64) -> Result<f64> {
    let n = check_range(lambda, q_bound, x)?;
    Ok(switched(lambda, q_bound, x, n).to_f64())
}

fn switched(lambda: &DenseLambda, q_bound: f64, x: f64, n: u64) -> Dd {
    let r_end = (x - 1.0) / q_bound;
    // integer r with r < r_end
    let r_max = if r_end.fract() == 0.0 { r_end as u64 - 1 } else { r_end.floor() as u64 };
    let parts: Vec<Dd> = (1..=r_max)
        .into_par_iter()
        .map(|r| {
            let lo = (r as f64 * q_bound + 1.0).floor() as u64;
            lambda.psi_ap_between(lo, n, r, 1)
        })
        .collect();
    ordered_sum(parts)
}

fn default_constants() -> &'static ConstantSet {
    static SET: OnceLock<ConstantSet> = OnceLock::new();
    SET.get_or_init(|| ConstantSet::at_cutoff(DEFAULT_PRIME_CUTOFF, 8).expect("default prime cutoff is valid"))
}

/// The constant in the main term, computed once at the default cutoff.
pub fn default_c3() -> f64 {
    default_constants().c3.value.to_f64()
}

/// `Q/2 log(x/Q) + C3 Q`.
pub fn main_term(q_bound: f64, x: f64) -> Result<f64> {
    if !(q_bound > 0.0 && q_bound < x) {
        return Err(LabError::domain(format!("need 0 < Q < x, got Q = {q_bound}, x = {x}")));
    }
    Ok(main_term_with(q_bound, x, default_c3()))
}

pub fn main_term_with(q_bound: f64, x: f64, c3: f64) -> f64 {
    q_bound / 2.0 * (x / q_bound).ln() + c3 * q_bound
}

/// S(Q; x) directly and as I - II + III, with II both as a sum over moduli
/// and after switching to the complementary divisor.
pub fn s_identity(lambda: &DenseLambda, q_bound: f64, x: f64) -> Result<SweepResult> {
    let n = check_range(lambda, q_bound, x)?;
    let psi_x = psi_at(lambda, n);
    let s = -s_terms(lambda, n, psi_x, integers_above(q_bound, 2.0 * q_bound));
    let term_i = progression_sum(lambda, n, integers_above(2.0 * q_bound, x));
    let term_ii_unswitched = progression_sum(lambda, n, integers_above(q_bound, x));
    let term_ii = switched(lambda, q_bound, x, n);
    // the principal part is taken modulo each q so that the rearrangement
    // is exact
    let parts: Vec<Dd> = integers_above(q_bound, 2.0 * q_bound)
        .into_par_iter()
        .map(|q| (psi_x - principal_defect(q, n)).div_f64(euler_phi(q) as f64))
        .collect();
    let term_iii = ordered_sum(parts);
    let s_direct = s.to_f64();
    let main = main_term(q_bound, x)?;
    Ok(SweepResult {
        q_bound,
        x,
        s_direct,
        term_i: term_i.to_f64(),
        term_ii: term_ii.to_f64(),
        term_ii_unswitched: term_ii_unswitched.to_f64(),
        term_iii: term_iii.to_f64(),
        main_term: main,
        residual: s_direct - main,
    })
}

/// The two discrepancy sums over `Q < q <= 2Q`, `(q, a) = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub q_bound: f64,
    pub x: f64,
    pub a: u64,
    /// `sum |psi(x; q, a) - psi(x, chi_0)/phi(q)|` from the sieve.
    pub with_abs: f64,
    /// The same with each remainder replaced by its truncated sum over
    /// non-real zeros; absent when no zero catalog was supplied.
    pub zero_route_no_real: Option<f64>,
    pub truncation_height: Option<f64>,
    pub moduli: usize,
}

/// Moduli in `(Q, 2Q]` coprime to `a`.
pub fn discrepancy_moduli(q_bound: f64, a: u64) -> Vec<u64> {
    integers_above(q_bound, 2.0 * q_bound).filter(|&q| gcd(a, q) == 1).collect()
}

pub fn bfi_discrepancy(
    lambda: &DenseLambda,
    q_bound: f64,
    x: f64,
    a: u64,
    zeros: Option<(&ZeroCatalog, f64)>,
) -> Result<Discrepancy> {
    if !(q_bound > 0.0 && q_bound < x) {
        return Err(LabError::domain(format!("need 0 < Q < x, got Q = {q_bound}, x = {x}")));
    }
    let n = check_range(lambda, 2.0, x)?;
    let psi_x = psi_at(lambda, n);
    let moduli = discrepancy_moduli(q_bound, a);
    let parts: Vec<Dd> = moduli
        .par_iter()
        .map(|&q| {
            let principal = (psi_x - principal_defect(q, n)).div_f64(euler_phi(q) as f64);
            (lambda.psi_ap(n, q, a) - principal).abs()
        })
        .collect();
    let with_abs = ordered_sum(parts).to_f64();
    let zero_route_no_real = match zeros {
        None => None,
        Some((catalog, height)) => {
            let sx = x.sqrt();
            let parts: Vec<f64> = moduli
                .par_iter()
                .map(|&q| {
                    let spec = ZeroSpectrum::build(catalog, q, a % q, height, false)?;
                    Ok(sx * spec.tstar(x).0.abs())
                })
                .collect::<Result<_>>()?;
            Some(parts.into_iter().sum())
        }
    };
    Ok(Discrepancy {
        q_bound,
        x,
        a,
        with_abs,
        zero_route_no_real,
        truncation_height: zeros.map(|z| z.1),
        moduli: moduli.len(),
    })
}

fn modulus_of(label: &str) -> Option<u64> {
    label.split(':').next()?.parse().ok()
}

fn z_totals(reports: &[CentralValueReport], moduli: std::ops::RangeInclusive<u64>) -> Result<u64> {
    let mut seen: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for r in reports {
        if let Some(q) = modulus_of(&r.label) {
            let e = seen.entry(q).or_default();
            e.0 += 1;
            e.1 += r.z_chi as u64;
        }
    }
    let mut missing = Vec::new();
    let mut total = 0;
    for q in moduli {
        let want = euler_phi(q) - 1;
        match seen.get(&q) {
            Some(&(count, z)) if count == want => total += z,
            None if want == 0 => {}
            _ => missing.push(q),
        }
    }
    if missing.is_empty() {
        Ok(total)
    } else {
        Err(LabError::MissingReports(missing))
    }
}

/// `Q^-2 sum_{q <= Q} sum_chi z(chi)` from central reports, which must
/// cover every nonprincipal character of every modulus up to Q.
pub fn z_count_average(q_bound: u64, reports: &[CentralValueReport]) -> Result<f64> {
    if q_bound == 0 {
        return Err(LabError::domain("Q must be positive"));
    }
    let total = z_totals(reports, 1..=q_bound)?;
    Ok(total as f64 / (q_bound as f64).powi(2))
}

/// The dyadic form `Q^-2 sum_{Q < q <= 2Q} sum_chi z(chi)`.
pub fn z_count_dyadic(q_bound: u64, reports: &[CentralValueReport]) -> Result<f64> {
    if q_bound == 0 {
        return Err(LabError::domain("Q must be positive"));
    }
    let total = z_totals(reports, q_bound + 1..=2 * q_bound)?;
    Ok(total as f64 / (q_bound as f64).powi(2))
}

/// `x^b/b + x^(1-b)/(1-b)`, the contribution of a pair of real zeros
/// `b, 1 - b` to the zero sum.
pub fn real_zero_pair(beta: f64, x: f64) -> f64 {
    x.powf(beta) / beta + x.powf(1.0 - beta) / (1.0 - beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::CentralStatus;
    use crate::precision::ComplexValue;

    fn brute_s(lambda: &[f64], q_bound: f64, x: f64) -> f64 {
        // double loop over (q, n), no shared code with the strided sums
        let n = x.floor() as usize;
        let mut total = 0.0;
        for q in (q_bound.floor() as usize + 1)..=((2.0 * q_bound).floor() as usize) {
            let mut on = 0.0;
            let mut coprime = 0.0;
            let mut units = 0usize;
            for k in 1..=q {
                if gcd(k as u64, q as u64) == 1 {
                    units += 1;
                }
            }
            for m in 2..=n {
                if m % q == 1 % q {
                    on += lambda[m];
                }
                if gcd(m as u64, q as u64) == 1 {
                    coprime += lambda[m];
                }
            }
            total -= on - coprime / units as f64;
        }
        total
    }

    #[test]
    fn direct_matches_double_loop() {
        let dl = DenseLambda::build(10_000).unwrap();
        let raw: Vec<f64> = (0..=10_000).map(|k| dl.lambda(k)).collect();
        let got = s_direct(&dl, 100.0, 10_000.0).unwrap();
        let want = brute_s(&raw, 100.0, 10_000.0);
        assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "{got} {want}");
    }

    #[test]
    fn empty_range_and_domain() {
        let dl = DenseLambda::build(1000).unwrap();
        let psi = psi_at(&dl, 1000);
        assert_eq!(s_terms(&dl, 1000, psi, integers_above(2.2, 2.9)).to_f64(), 0.0);
        assert!(matches!(s_direct(&dl, 1000.0, 1000.0), Err(LabError::Domain(_))));
        assert!(matches!(s_direct(&dl, 1.5, 1000.0), Err(LabError::Domain(_))));
        assert!(matches!(s_direct(&dl, 10.0, 2000.0), Err(LabError::Resource(_))));
    }

    #[test]
    fn single_modulus_discrepancy() {
        let dl = DenseLambda::build(5000).unwrap();
        // (1.6, 3.2] holds 2 and 3; only 2 is prime to a = 3
        let d = bfi_discrepancy(&dl, 1.6, 5000.0, 3, None).unwrap();
        assert_eq!(d.moduli, 1);
        let odd: f64 = (3..=5000).step_by(2).map(|k| dl.lambda(k)).sum();
        assert!((d.with_abs - (dl.psi_ap(5000, 2, 1).to_f64() - odd).abs()).abs() < 1e-9);
        let d = bfi_discrepancy(&dl, 50.0, 5000.0, 2, None).unwrap();
        assert_eq!(d.moduli, 25);
        assert!(d.with_abs.is_finite() && d.with_abs > 0.0);
    }

    #[test]
    fn identity_and_switch() {
        let dl = DenseLambda::build(10_000).unwrap();
        let r = s_identity(&dl, 250.0, 10_000.0).unwrap();
        assert!(r.identity_defect() < 1e-9, "{r:?}");
        assert!(r.switch_defect() < 1e-9, "{r:?}");
        let r = s_identity(&dl, 333.3, 9_999.5).unwrap();
        assert!(r.identity_defect() < 1e-9 && r.switch_defect() < 1e-9);
    }

    #[test]
    fn main_term_zero_crossing() {
        let c3 = default_c3();
        let x = 1e6;
        let q = x * (2.0 * c3).exp();
        assert!(main_term_with(q, x, c3).abs() < 1e-9 * q);
        assert!(main_term(2e6, 1e6).is_err());
    }

    fn report(label: &str, z: u32) -> CentralValueReport {
        CentralValueReport {
            label: label.into(),
            l_half: ComplexValue::ONE,
            z_chi: z,
            vanishing_threshold: 1e-3,
            status: CentralStatus::NonVanishing,
        }
    }

    #[test]
    fn z_average_arithmetic() {
        let mut reports = vec![report("3:1", 0), report("4:1", 0), report("5:1", 0), report("5:2", 0), report("5:3", 0)];
        assert_eq!(z_count_average(5, &reports).unwrap(), 0.0);
        reports[3].z_chi = 1;
        assert_eq!(z_count_average(5, &reports).unwrap(), 1.0 / 25.0);
        match z_count_average(6, &reports) {
            Err(LabError::MissingReports(m)) => assert_eq!(m, vec![6]),
            other => panic!("{other:?}"),
        }
        reports.pop();
        assert!(matches!(z_count_average(5, &reports), Err(LabError::MissingReports(_))));
    }

    #[test]
    fn pair_at_half() {
        let x: f64 = 1e4;
        assert!((real_zero_pair(0.5, x) - 4.0 * x.sqrt()).abs() < 1e-9);
    }
}
