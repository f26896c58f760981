//! Truncated sums over nontrivial zeros and the normalized remainders of the
//! prime number theorem in progressions.

use crate::arith::numtheory::{euler_phi, gcd};
use crate::arith::psi::{psi_character, psi_principal, psi_progression};
use crate::arith::SieveTable;
use crate::characters::{CharacterGroup, DirichletCharacter};
use crate::error::{LabError, Result};
use crate::lfunc::{central_report, imprimitive_psi_correction, ZeroCatalog};
use crate::precision::ComplexValue;

/// Constant in the truncation estimate `C x log^2(q x) / T`.
pub const TRUNCATION_CONSTANT: f64 = 4.0;

/// Tail estimate for a zero sum over `|gamma| <= t_height` at `x`.
pub fn truncation_bound(x: f64, q: u64, t_height: f64) -> f64 {
    let l = (q as f64 * x).ln();
    TRUNCATION_CONSTANT * x * l * l / t_height
}

/// A complex number in plain doubles; zero sums need no more.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn conj(self) -> C64 {
        C64::new(self.re, -self.im)
    }

    pub fn from_value(v: ComplexValue) -> C64 {
        C64::new(v.re.to_f64(), v.im.to_f64())
    }
}

/// `x^(i gamma) / (1/2 + i gamma)`; multiplying by `sqrt x` gives `x^rho/rho`.
#[inline]
pub fn normalized_term(log_x: f64, gamma: f64) -> C64 {
    let (s, c) = (gamma * log_x).sin_cos();
    let d = 0.25 + gamma * gamma;
    // (c + i s)(1/2 - i gamma) / d
    C64::new((0.5 * c + gamma * s) / d, (0.5 * s - gamma * c) / d)
}

/// Signed ordinates `gamma` of the zeros `1/2 + i gamma` of `L(s, chi)` with
/// `|gamma| <= t_height`: positive ones from chi, negative ones from conj chi.
pub fn signed_ordinates(catalog: &ZeroCatalog, chi: &DirichletCharacter, t_height: f64) -> Result<Vec<f64>> {
    let pos = catalog.lookup(chi, t_height)?;
    let neg = catalog.lookup(&chi.conj(), t_height)?;
    let mut out: Vec<f64> = pos.upto(t_height).collect();
    out.extend(neg.upto(t_height).map(|g| -g));
    Ok(out)
}

/// `-sum_{|gamma| <= T} x^rho / rho` for the primitive character inducing chi.
/// With `include_real` the central zeros (order z(chi)) are added as well.
pub fn zero_sum(
    catalog: &ZeroCatalog,
    x: f64,
    chi: &DirichletCharacter,
    t_height: f64,
    include_real: bool,
) -> Result<ComplexValue> {
    let star = chi.primitive_part();
    if star.is_principal() {
        return Err(LabError::domain("zero sums are taken over nonprincipal characters"));
    }
    let log_x = x.ln();
    let sx = x.sqrt();
    let mut acc = C64::default();
    for g in signed_ordinates(catalog, &star, t_height)? {
        let t = normalized_term(log_x, g);
        acc.re += t.re;
        acc.im += t.im;
    }
    let mut re = -sx * acc.re;
    let im = -sx * acc.im;
    if include_real {
        let z = central_report(&star, crate::lfunc::central::DEFAULT_THRESHOLD)?.z_chi;
        re -= z as f64 * 2.0 * sx;
    }
    Ok(ComplexValue::from_f64(re, im))
}

/// Sum of `x^(a-2m)/(2m-a)` over `m >= 1` minus `(1-a) log x`: the trivial-zero
/// and pole part of the explicit formula, up to an additive constant.
pub fn trivial_zero_term(x: f64, parity: u8) -> f64 {
    if parity == 0 {
        -x.ln() - 0.5 * (-(x * x).recip()).ln_1p()
    } else {
        0.5 * ((x + 1.0) / (x - 1.0)).ln()
    }
}

/// Parameters of one truncated zero-sum evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSumConfig {
    pub t_height: f64,
    pub include_real_zeros: bool,
    pub x: f64,
    pub q: u64,
    pub a: u64,
}

impl ZeroSumConfig {
    /// Checks coprimality and that the catalog reaches `t_height` for every
    /// character mod q.
    pub fn validate(&self, catalog: &ZeroCatalog) -> Result<()> {
        check_progression(self.q, self.a)?;
        for chi in CharacterGroup::new(self.q)?.characters() {
            if !chi.is_principal() {
                catalog.lookup(chi, self.t_height).map_err(|e| name_character(e, chi))?;
                catalog.lookup(&chi.conj(), self.t_height).map_err(|e| name_character(e, chi))?;
            }
        }
        Ok(())
    }
}

/// Remainder values for one progression.
#[derive(Clone, Debug, PartialEq)]
pub struct RemainderValue {
    pub x: f64,
    pub q: u64,
    pub a: u64,
    /// Sieve route.
    pub t_value: Option<f64>,
    /// Zero route, non-real zeros only.
    pub tstar_value: Option<f64>,
    /// Imaginary part left in the zero route (rounding only).
    pub tstar_imag: f64,
    pub truncation_error_bound: f64,
}

fn check_progression(q: u64, a: u64) -> Result<()> {
    if q == 0 || gcd(a % q, q) != 1 {
        return Err(LabError::domain(format!("residue {a} is not a unit mod {q}")));
    }
    Ok(())
}

/// `-x^(-1/2) (psi(x; q, a) - psi(x, chi_0)/phi(q))` from the sieve.
pub fn remainder_t(table: &SieveTable, x: f64, q: u64, a: u64) -> Result<RemainderValue> {
    check_progression(q, a)?;
    let value = if q == 1 {
        0.0
    } else {
        let p = psi_progression(table, x, q, a)?.value;
        let p0 = psi_principal(table, x, q)?.value;
        -(p - p0.div_f64(euler_phi(q) as f64)).to_f64() / x.sqrt()
    };
    Ok(RemainderValue {
        x,
        q,
        a,
        t_value: Some(value),
        tstar_value: None,
        tstar_imag: 0.0,
        truncation_error_bound: 0.0,
    })
}

/// Zeros of every nonprincipal character mod q, weighted by `conj chi(a)`,
/// ready for evaluation of the zero-side remainder at many `x`.
#[derive(Clone, Debug)]
pub struct ZeroSpectrum {
    pub q: u64,
    pub a: u64,
    pub t_height: f64,
    /// `(weight, gamma)` for every zero of every nonprincipal character.
    pub terms: Vec<(C64, f64)>,
    /// `(2/phi(q)) sum conj chi(a) z(chi)`, the central contribution.
    pub central: f64,
}

impl ZeroSpectrum {
    pub fn build(catalog: &ZeroCatalog, q: u64, a: u64, t_height: f64, with_central: bool) -> Result<Self> {
        check_progression(q, a)?;
        let group = CharacterGroup::new(q)?;
        let mut terms = Vec::new();
        let mut central = C64::default();
        for chi in group.characters().iter().filter(|c| !c.is_principal()) {
            let w = C64::from_value(chi.evaluate(a as i64)).conj();
            let star = chi.primitive_part();
            for g in signed_ordinates(catalog, &star, t_height).map_err(|e| name_character(e, chi))? {
                terms.push((w, g));
            }
            if with_central {
                let z = central_report(&star, crate::lfunc::central::DEFAULT_THRESHOLD)?.z_chi as f64;
                central.re += w.re * z;
                central.im += w.im * z;
            }
        }
        let phi = euler_phi(q) as f64;
        Ok(ZeroSpectrum {
            q,
            a,
            t_height,
            terms,
            central: 2.0 * central.re / phi,
        })
    }

    /// `T*(x; q, a)` and its (rounding-level) imaginary part.
    pub fn tstar(&self, x: f64) -> (f64, f64) {
        let log_x = x.ln();
        let mut re = 0.0;
        let mut im = 0.0;
        for &(w, g) in &self.terms {
            let t = w.mul(normalized_term(log_x, g));
            re += t.re;
            im += t.im;
        }
        let phi = euler_phi(self.q) as f64;
        (re / phi, im / phi)
    }

    /// Truncation bound for `T*` at `x`.
    pub fn bound(&self, x: f64) -> f64 {
        truncation_bound(x, self.q, self.t_height) / x.sqrt()
    }
}

fn name_character(e: LabError, chi: &DirichletCharacter) -> LabError {
    match e {
        LabError::InsufficientZeros { label, needed, available } => LabError::InsufficientZeros {
            label: format!("{label} (inducing {})", chi.label()),
            needed,
            available,
        },
        other => other,
    }
}

/// `T*(x; q, a)` with its truncation bound.
pub fn remainder_tstar(catalog: &ZeroCatalog, x: f64, q: u64, a: u64, t_height: f64) -> Result<RemainderValue> {
    let spec = ZeroSpectrum::build(catalog, q, a, t_height, false)?;
    let (re, im) = spec.tstar(x);
    Ok(RemainderValue {
        x,
        q,
        a,
        t_value: None,
        tstar_value: Some(re),
        tstar_imag: im,
        truncation_error_bound: if q == 1 { 0.0 } else { spec.bound(x) },
    })
}

/// Both routes at once.
pub fn remainder_both(
    table: &SieveTable,
    catalog: &ZeroCatalog,
    x: f64,
    q: u64,
    a: u64,
    t_height: f64,
) -> Result<RemainderValue> {
    let t = remainder_t(table, x, q, a)?;
    let s = remainder_tstar(catalog, x, q, a, t_height)?;
    Ok(RemainderValue {
        t_value: t.t_value,
        ..s
    })
}

/// `|phi(q) x^(1/2) T*| / (x^(1/2+eps) / q^(1/2))`.
pub fn hypothesis_ratio(catalog: &ZeroCatalog, x: f64, q: u64, a: u64, t_height: f64, epsilon: f64) -> Result<f64> {
    let r = remainder_tstar(catalog, x, q, a, t_height)?;
    let tstar = r.tstar_value.unwrap_or(0.0);
    Ok(euler_phi(q) as f64 * (q as f64).sqrt() * tstar.abs() / x.powf(epsilon))
}

/// Parts of the differenced explicit formula between `x1` and `x2`.
#[derive(Clone, Debug)]
pub struct DifferencedCheck {
    pub label: String,
    pub x1: f64,
    pub x2: f64,
    pub t_height: f64,
    pub psi_difference: ComplexValue,
    pub zero_difference: ComplexValue,
    pub trivial_difference: f64,
    pub residual: f64,
    pub truncation_bound: f64,
}

/// `|(psi(x2,chi) - psi(x1,chi)) - (zero_sum(x2) - zero_sum(x1)) - trivial|`.
/// Imprimitive characters are reduced to their primitive part through the
/// finite Euler-factor correction.
pub fn differenced_explicit_check(
    table: &SieveTable,
    catalog: &ZeroCatalog,
    x1: f64,
    x2: f64,
    chi: &DirichletCharacter,
    t_height: f64,
) -> Result<DifferencedCheck> {
    if !(x1 >= 2.0 && x2 >= x1) {
        return Err(LabError::domain(format!("need 2 <= x1 <= x2, got {x1}, {x2}")));
    }
    let star = chi.primitive_part();
    let psi_at = |x: f64| -> Result<ComplexValue> {
        Ok(psi_character(table, x, chi)? + imprimitive_psi_correction(chi, x))
    };
    let (p1, p2) = (psi_at(x1)?, psi_at(x2)?);
    let (z1, z2) = if x1 == x2 {
        (ComplexValue::ZERO, ComplexValue::ZERO)
    } else {
        (
            zero_sum(catalog, x1, &star, t_height, false)?,
            zero_sum(catalog, x2, &star, t_height, false)?,
        )
    };
    let trivial = if x1 == x2 {
        0.0
    } else {
        trivial_zero_term(x2, star.parity()) - trivial_zero_term(x1, star.parity())
    };
    let dpsi = p2 - p1;
    let dz = z2 - z1;
    let (rr, ri) = (dpsi - dz).to_f64();
    let residual = (rr - trivial).hypot(ri);
    Ok(DifferencedCheck {
        label: chi.label(),
        x1,
        x2,
        t_height,
        psi_difference: dpsi,
        zero_difference: dz,
        trivial_difference: trivial,
        residual,
        truncation_bound: truncation_bound(x2, chi.modulus(), t_height),
    })
}
