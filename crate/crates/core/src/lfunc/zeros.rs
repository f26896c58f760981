//! Critical-line zeros: grid scan of the rotated function, bracketed
//! refinement, and an argument-principle audit of the count.

use super::hurwitz::EmParams;
use super::lvalue::{ln_gamma_factor, HardyRotation, HurwitzBank};
use crate::characters::{CharacterGroup, DirichletCharacter};
use crate::error::{LabError, Result};
use crate::precision::{ComplexValue, Dd};
use rayon::prelude::*;
use std::f64::consts::PI;

pub const DEFAULT_GRID_STEP: f64 = 0.05;
pub const DEFAULT_PRECISION_DIGITS: u32 = 30;
pub const MAX_SCAN_HEIGHT: f64 = 10_000.0;

#[derive(Clone, Copy, Debug)]
pub struct AuditConfig {
    /// Initial piece length along the vertical edges.
    pub initial_piece: f64,
    /// Largest accepted phase change between neighbouring samples.
    pub max_phase_step: f64,
    pub max_depth: u32,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            initial_piece: 0.25,
            max_phase_step: PI / 3.0,
            max_depth: 24,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScanConfig {
    pub grid_step: f64,
    pub max_halvings: u32,
    pub precision_digits: u32,
    pub max_height: f64,
    pub em: EmParams,
    pub audit: AuditConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid_step: DEFAULT_GRID_STEP,
            max_halvings: 8,
            precision_digits: DEFAULT_PRECISION_DIGITS,
            max_height: MAX_SCAN_HEIGHT,
            em: EmParams::default(),
            audit: AuditConfig::default(),
        }
    }
}

/// Positive ordinates of critical-line zeros of one primitive L-function.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub label: String,
    pub modulus: u64,
    /// Height up to which the set is complete.
    pub height: f64,
    pub ordinates: Vec<Dd>,
    pub multiplicities: Vec<u32>,
    pub precision_digits: u32,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Ordinates `0 < gamma <= t` as f64.
    pub fn upto(&self, t: f64) -> impl Iterator<Item = f64> + '_ {
        self.ordinates.iter().map(|g| g.hi + g.lo).take_while(move |&g| g <= t)
    }

    pub fn count_upto(&self, t: f64) -> usize {
        self.upto(t).count()
    }
}

/// Ordinates of two sets closer than the tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct NearCoincidence {
    pub first: String,
    pub second: String,
    pub gamma_first: f64,
    pub gamma_second: f64,
}

pub fn near_coincidences(sets: &[ZeroSet], tol: f64) -> Vec<NearCoincidence> {
    let mut all: Vec<(f64, usize)> = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.ordinates.iter().map(move |g| (g.to_f64(), i)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    for (k, &(g, i)) in all.iter().enumerate() {
        for &(h, j) in &all[k + 1..] {
            if h - g > tol {
                break;
            }
            if i != j {
                out.push(NearCoincidence {
                    first: sets[i].label.clone(),
                    second: sets[j].label.clone(),
                    gamma_first: g,
                    gamma_second: h,
                });
            }
        }
    }
    out
}

fn wrap(d: f64) -> f64 {
    let mut d = d % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// Evaluation of one primitive character's L-function and its completion.
pub struct LEvaluator {
    chi: DirichletCharacter,
    conj: DirichletCharacter,
    rotation: HardyRotation,
    bank: HurwitzBank,
    ln_root: ComplexValue,
}

impl LEvaluator {
    pub fn new(chi: &DirichletCharacter, height: f64, em: EmParams) -> Result<Self> {
        let rotation = HardyRotation::new(chi)?;
        let ln_root = rotation.root_number().ln();
        Ok(LEvaluator {
            chi: chi.clone(),
            conj: chi.conj(),
            rotation,
            bank: HurwitzBank::for_height(chi.modulus(), height + 2.0, em),
            ln_root,
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn bank(&self) -> &HurwitzBank {
        &self.bank
    }

    pub fn rotation(&self) -> &HardyRotation {
        &self.rotation
    }

    /// Rotated value `Z(t)`; the imaginary part is rounding noise.
    pub fn z(&self, t: Dd) -> Result<ComplexValue> {
        let s = ComplexValue::new(Dd::from_f64(0.5), t);
        let l = self.bank.l_value(s, &self.chi)?;
        Ok(self.rotation.rotate(t, l))
    }

    /// `log Lambda(s, chi)` with an arbitrary branch. Left of the critical
    /// line the reflection `Lambda(s) = eps Lambda(1 - s, conj chi)` is used.
    pub fn ln_completed(&self, s: ComplexValue) -> Result<ComplexValue> {
        let half = Dd::from_f64(0.5);
        if s.re >= half {
            let l = self.bank.l_value(s, &self.chi)?;
            Ok(ln_gamma_factor(s, self.chi.modulus(), self.chi.parity()) + l.ln())
        } else {
            let r = ComplexValue::ONE - s;
            let l = self.bank.l_value(r, &self.conj)?;
            Ok(self.ln_root + ln_gamma_factor(r, self.chi.modulus(), self.chi.parity()) + l.ln())
        }
    }

    fn phase(&self, s: ComplexValue) -> Result<f64> {
        let v = self.ln_completed(s)?;
        if !v.re.is_finite() {
            return Err(LabError::Audit(format!(
                "completed L-function of {} vanishes on the contour at {s:.8}",
                self.chi.label()
            )));
        }
        Ok(v.im.to_f64())
    }

    /// Number of zeros of the completed function in
    /// `[-1/2, 3/2] x [t_lo, t_hi]` by the argument principle.
    pub fn audit_count(&self, t_lo: f64, t_hi: f64, cfg: &AuditConfig) -> Result<usize> {
        let p = |sigma: f64, t: f64| ComplexValue::from_f64(sigma, t);
        let horizontal = 2.0;
        let vertical = t_hi - t_lo;
        let n_h = ((horizontal / cfg.initial_piece).ceil() as usize).max(4);
        let n_v = ((vertical / cfg.initial_piece).ceil() as usize).max(1);
        let mut total = 0.0;
        total += self.edge(|u| p(-0.5 + 2.0 * u, t_lo), n_h, cfg)?;
        total += self.edge(|u| p(1.5, t_lo + vertical * u), n_v, cfg)?;
        total += self.edge(|u| p(1.5 - 2.0 * u, t_hi), n_h, cfg)?;
        total += self.edge(|u| p(-0.5, t_hi - vertical * u), n_v, cfg)?;
        let winding = total / (2.0 * PI);
        let n = winding.round();
        if (winding - n).abs() > 0.05 || n < 0.0 {
            return Err(LabError::Audit(format!(
                "non-integral winding {winding:.4} for {} on [{t_lo}, {t_hi}]",
                self.chi.label()
            )));
        }
        Ok(n as usize)
    }

    /// Phase change along `u in [0, 1] -> f(u)`.
    fn edge<F: Fn(f64) -> ComplexValue + Sync>(&self, f: F, pieces: usize, cfg: &AuditConfig) -> Result<f64> {
        let us: Vec<f64> = (0..=pieces).map(|k| k as f64 / pieces as f64).collect();
        let phases: Vec<f64> = us
            .par_iter()
            .map(|&u| self.phase(f(u)))
            .collect::<Result<_>>()?;
        let parts: Vec<f64> = (0..pieces)
            .into_par_iter()
            .map(|k| self.piece(&f, us[k], us[k + 1], phases[k], phases[k + 1], 0, cfg))
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().sum())
    }

    #[allow(clippy::too_many_arguments)]
    fn piece<F: Fn(f64) -> ComplexValue>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        pa: f64,
        pb: f64,
        depth: u32,
        cfg: &AuditConfig,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let pm = self.phase(f(m))?;
        let d1 = wrap(pm - pa);
        let d2 = wrap(pb - pm);
        let d = wrap(pb - pa);
        let thr = cfg.max_phase_step;
        if d1.abs() < thr && d2.abs() < thr && (d1 + d2 - d).abs() < 1e-6 {
            return Ok(d1 + d2);
        }
        if depth >= cfg.max_depth {
            return Err(LabError::Audit(format!(
                "phase jump of {d:.3} rad persists at {} after {depth} subdivisions ({})",
                f(m),
                self.chi.label()
            )));
        }
        Ok(self.piece(f, a, m, pa, pm, depth + 1, cfg)? + self.piece(f, m, b, pm, pb, depth + 1, cfg)?)
    }
}

/// Illinois iteration on a sign-changing bracket; stops when `|f| < f_tol`.
fn refine_root<F: Fn(Dd) -> Result<Dd>>(f: F, mut a: Dd, mut b: Dd, mut fa: Dd, mut fb: Dd, f_tol: f64) -> Result<Dd> {
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..200 {
        let c = b - fb * (b - a) / (fb - fa);
        let c = if c > a.max_dd(b) || c < a.min_dd(b) { (a + b).ldexp(-1) } else { c };
        let fc = f(c)?;
        if fc.abs() < best.1.abs() {
            best = (c, fc);
        }
        if fc.abs().hi < f_tol || fc.hi == 0.0 {
            return Ok(c);
        }
        if (b - a).abs().hi < 1e-29 * c.abs().hi.max(1.0) {
            break;
        }
        if (fc.hi > 0.0) != (fb.hi > 0.0) {
            a = b;
            fa = fb;
        } else {
            fa = fa.ldexp(-1);
        }
        b = c;
        fb = fc;
    }
    Ok(best.0)
}

trait MinMax {
    fn max_dd(self, o: Self) -> Self;
    fn min_dd(self, o: Self) -> Self;
}

impl MinMax for Dd {
    fn max_dd(self, o: Dd) -> Dd {
        if self > o {
            self
        } else {
            o
        }
    }
    fn min_dd(self, o: Dd) -> Dd {
        if self < o {
            self
        } else {
            o
        }
    }
}

fn grid(t_lo: f64, t_hi: f64, step: f64) -> Vec<f64> {
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let mut g: Vec<f64> = (0..n).map(|k| t_lo + k as f64 * step).collect();
    g.push(t_hi);
    g
}

fn check_family(chars: &[DirichletCharacter]) -> Result<u64> {
    let q = chars
        .first()
        .map(|c| c.modulus())
        .ok_or_else(|| LabError::domain("empty character family"))?;
    for c in chars {
        if c.modulus() != q {
            return Err(LabError::domain("family members must share a modulus"));
        }
        if c.is_principal() || !c.is_primitive() {
            return Err(LabError::domain(format!(
                "zero scans need primitive nonprincipal characters, got {}",
                c.label()
            )));
        }
    }
    Ok(q)
}

/// Scan a family of primitive characters of one modulus on `(t_lo, t_hi]`,
/// sharing the Hurwitz evaluations across the family. Each character's
/// sign-change count is checked against the argument principle; the grid is
/// halved on mismatch.
pub fn scan_family(chars: &[DirichletCharacter], t_lo: f64, t_hi: f64, cfg: &ScanConfig) -> Result<Vec<ZeroSet>> {
    let q = check_family(chars)?;
    if !(t_hi > t_lo && t_lo >= 0.0) {
        return Err(LabError::domain(format!("bad scan interval [{t_lo}, {t_hi}]")));
    }
    if t_hi > cfg.max_height {
        return Err(LabError::Resource(format!(
            "scan height {t_hi} exceeds configured maximum {}",
            cfg.max_height
        )));
    }
    let evals: Vec<LEvaluator> = chars
        .iter()
        .map(|c| LEvaluator::new(c, t_hi, cfg.em))
        .collect::<Result<_>>()?;
    let bank = &evals[0].bank;
    let f_tol = 10f64.powi(-(cfg.precision_digits as i32 - 3));
    let mut expected: Vec<Option<usize>> = vec![None; chars.len()];
    let mut found: Vec<Option<Vec<Dd>>> = vec![None; chars.len()];
    let mut last_counts = vec![0usize; chars.len()];
    let mut step = cfg.grid_step;
    for _ in 0..=cfg.max_halvings {
        let pending: Vec<usize> = (0..chars.len()).filter(|&i| found[i].is_none()).collect();
        if pending.is_empty() {
            break;
        }
        let ts = grid(t_lo, t_hi, step);
        let values: Vec<Vec<Dd>> = ts
            .par_iter()
            .map(|&t| {
                let td = Dd::from_f64(t);
                let s = ComplexValue::new(Dd::from_f64(0.5), td);
                let z = bank.zeta_vector(s)?;
                Ok(pending
                    .iter()
                    .map(|&i| {
                        let l = bank.combine(s, &z, &chars[i]);
                        evals[i].rotation.rotate(td, l).re
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        for (col, &i) in pending.iter().enumerate() {
            let ev = &evals[i];
            let f = |t: Dd| ev.z(t).map(|z| z.re);
            let mut brackets = Vec::new();
            for k in 0..ts.len() - 1 {
                let (va, vb) = (values[k][col], values[k + 1][col]);
                if va.hi == 0.0 && k > 0 {
                    continue;
                }
                if (va.hi < 0.0 && vb.hi > 0.0) || (va.hi > 0.0 && vb.hi < 0.0) || vb.hi == 0.0 {
                    brackets.push((ts[k], ts[k + 1], va, vb));
                }
            }
            let zeros: Vec<Dd> = brackets
                .par_iter()
                .map(|&(a, b, va, vb)| {
                    if vb.hi == 0.0 {
                        return Ok(Dd::from_f64(b));
                    }
                    refine_root(f, Dd::from_f64(a), Dd::from_f64(b), va, vb, f_tol)
                })
                .collect::<Result<_>>()?;
            let want = match expected[i] {
                Some(n) => n,
                None => {
                    let n = ev.audit_count(t_lo, t_hi, &cfg.audit)?;
                    expected[i] = Some(n);
                    n
                }
            };
            last_counts[i] = zeros.len();
            if zeros.len() == want {
                found[i] = Some(zeros);
            }
        }
        step /= 2.0;
    }
    if let Some(i) = (0..chars.len()).find(|&i| found[i].is_none()) {
        let (from, to) = locate_mismatch(&evals[i], t_lo, t_hi, step * 2.0, cfg)?;
        return Err(LabError::IncompleteScan {
            label: chars[i].label(),
            from,
            to,
            found: last_counts[i],
            expected: expected[i].unwrap_or(0),
        });
    }
    Ok(chars
        .iter()
        .zip(found)
        .map(|(c, z)| {
            let ordinates = z.expect("all found");
            ZeroSet {
                label: c.label(),
                modulus: q,
                height: t_hi,
                multiplicities: vec![1; ordinates.len()],
                ordinates,
                precision_digits: cfg.precision_digits,
            }
        })
        .collect())
}

/// Narrow an audit mismatch to one of eight sub-intervals.
fn locate_mismatch(ev: &LEvaluator, t_lo: f64, t_hi: f64, step: f64, cfg: &ScanConfig) -> Result<(f64, f64)> {
    let pieces = 8;
    let w = (t_hi - t_lo) / pieces as f64;
    for k in 0..pieces {
        let a = t_lo + k as f64 * w;
        let b = a + w;
        let n = ev.audit_count(a, b, &cfg.audit)?;
        let ts = grid(a, b, step);
        let vals: Vec<f64> = ts
            .iter()
            .map(|&t| ev.z(Dd::from_f64(t)).map(|z| z.re.hi))
            .collect::<Result<_>>()?;
        let changes = vals.windows(2).filter(|v| v[0] * v[1] < 0.0).count();
        if changes != n {
            return Ok((a, b));
        }
    }
    Ok((t_lo, t_hi))
}

/// Zeros of one primitive character on `(0, t_max]`.
pub fn scan_zeros(chi: &DirichletCharacter, t_max: f64, grid_step: f64) -> Result<ZeroSet> {
    let cfg = ScanConfig {
        grid_step,
        ..Default::default()
    };
    scan_family(std::slice::from_ref(chi), 0.0, t_max, &cfg).map(|mut v| v.remove(0))
}

/// All primitive nonprincipal characters of one modulus, scanned together.
pub fn scan_modulus(q: u64, t_max: f64, cfg: &ScanConfig) -> Result<Vec<ZeroSet>> {
    let group = CharacterGroup::new(q)?;
    let chars: Vec<DirichletCharacter> = group
        .primitive_characters()
        .filter(|c| !c.is_principal())
        .cloned()
        .collect();
    if chars.is_empty() {
        return Ok(Vec::new());
    }
    scan_family(&chars, 0.0, t_max, cfg)
}

/// Argument-principle count of zeros with `0 < gamma <= t`.
pub fn zero_count_audit(chi: &DirichletCharacter, t: f64) -> Result<usize> {
    zero_count_audit_with(chi, t, &ScanConfig::default())
}

pub fn zero_count_audit_with(chi: &DirichletCharacter, t: f64, cfg: &ScanConfig) -> Result<usize> {
    check_family(std::slice::from_ref(chi))?;
    let ev = LEvaluator::new(chi, t + 1.0, cfg.em)?;
    // keep the top edge off an ordinate
    let mut top = t;
    if ev.z(Dd::from_f64(top))?.abs().hi < 1e-8 {
        top += 1e-6;
    }
    ev.audit_count(0.0, top, &cfg.audit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_range() {
        assert!((wrap(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn first_zero_mod_four() {
        let chi = DirichletCharacter::from_label("4:1").unwrap();
        let z = scan_zeros(&chi, 10.0, 0.05).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z.ordinates[0].to_f64() - 6.0209).abs() < 1e-3);
    }

    #[test]
    fn coincidences_reported() {
        let mk = |label: &str, g: f64| ZeroSet {
            label: label.into(),
            modulus: 5,
            height: 10.0,
            ordinates: vec![Dd::from_f64(g)],
            multiplicities: vec![1],
            precision_digits: 30,
        };
        let sets = vec![mk("5:1", 3.0), mk("5:3", 3.0 + 5e-7), mk("5:2", 4.0)];
        let c = near_coincidences(&sets, 1e-6);
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].first.as_str(), c[0].second.as_str()), ("5:1", "5:3"));
    }
}
