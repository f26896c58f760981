use crate::config::RunConfig;
use crate::output::Artifact;
use clap::Args;
use dirichlet_lab::aggregates::{bfi_discrepancy, s_identity};
use dirichlet_lab::arith::{euler_phi, psi_progression_streaming, DenseLambda, SieveConfig, SieveTable};
use dirichlet_lab::characters::CharacterGroup;
use dirichlet_lab::constants::{ConstantSet, DIVERGENT_VARIANT_NOTE, MAX_PRIME_CUTOFF};
use dirichlet_lab::distribution::{moment_report, one_level_density, sample_series, SampleSource, Which, DEFAULT_SAMPLES};
use dirichlet_lab::explicit::differenced_explicit_check;
use dirichlet_lab::iteration::{closed_form, iterate_trace};
use dirichlet_lab::lfunc::{central_sweep, CentralStatus, ZeroCatalog};
use dirichlet_lab::{LabError, Result};
use serde::Serialize;

/// Exit status of a command that ran to completion.
pub enum Finished {
    Ok,
    /// Output was written but an audit flagged something.
    Flagged,
}

const DIGITS: usize = 32;

fn sieve_config(cfg: &RunConfig) -> SieveConfig {
    SieveConfig { max_end: cfg.sieve_cap, ..SieveConfig::default() }
}

fn check_x(cfg: &RunConfig, x: f64) -> Result<u64> {
    if !x.is_finite() || x < 2.0 {
        return Err(LabError::domain(format!("x must be at least 2, got {x}")));
    }
    let n = x.floor() as u64;
    if n > cfg.sieve_cap {
        return Err(LabError::Resource(format!("x = {x} exceeds the sieve cap {}", cfg.sieve_cap)));
    }
    Ok(n)
}

/// Zeros for every character mod q, imprimitive ones through the
/// characters inducing them.
fn ensure_all(catalog: &mut ZeroCatalog, q: u64, height: f64) -> Result<()> {
    let group = CharacterGroup::new(q)?;
    catalog.ensure(group.characters(), height)
}

#[derive(Args, Debug, Serialize)]
pub struct CharactersArgs {
    #[arg(long)]
    pub modulus: u64,
}

#[derive(Serialize)]
struct CharacterRow {
    label: String,
    order: u64,
    parity: u8,
    conductor: u64,
    primitive: bool,
    real: bool,
}

pub fn characters(cfg: &RunConfig, args: &CharactersArgs) -> Result<Finished> {
    let group = CharacterGroup::new(args.modulus)?;
    let rows: Vec<CharacterRow> = group
        .characters()
        .iter()
        .map(|c| CharacterRow {
            label: c.label(),
            order: c.order(),
            parity: c.parity(),
            conductor: c.conductor(),
            primitive: c.is_primitive(),
            real: c.is_real(),
        })
        .collect();
    Artifact::open(cfg, "characters", args)?.csv(&[format!("phi = {}", group.len())], &rows)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct ZerosArgs {
    #[arg(long)]
    pub modulus: u64,
    /// Only this character; every nonprincipal character mod q otherwise.
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long)]
    pub height: Option<f64>,
}

#[derive(Serialize)]
struct ZeroRow {
    label: String,
    primitive_label: String,
    gamma: String,
}

pub fn zeros(cfg: &RunConfig, args: &ZerosArgs) -> Result<Finished> {
    let height = cfg.height(args.height);
    let group = CharacterGroup::new(args.modulus)?;
    let chars: Vec<_> = group
        .characters()
        .iter()
        .filter(|c| !c.primitive_part().is_principal())
        .filter(|c| args.label.as_deref().is_none_or(|l| c.label() == l))
        .cloned()
        .collect();
    if chars.is_empty() {
        return Err(LabError::domain(match &args.label {
            Some(l) => format!("no nonprincipal character {l:?} mod {}", args.modulus),
            None => format!("no nonprincipal characters mod {}", args.modulus),
        }));
    }
    let mut catalog = cfg.catalog()?;
    catalog.ensure(&chars, height)?;
    let mut rows = Vec::new();
    for chi in &chars {
        let set = catalog.lookup(chi, height)?;
        for g in set.ordinates.iter().filter(|g| g.hi <= height) {
            rows.push(ZeroRow {
                label: chi.label(),
                primitive_label: set.label.clone(),
                gamma: g.to_decimal(DIGITS),
            });
        }
    }
    Artifact::open(cfg, "zeros", args)?.csv(&[format!("height = {height}")], &rows)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct PsiArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub modulus: u64,
    #[arg(long)]
    pub residue: u64,
}

pub fn psi(cfg: &RunConfig, args: &PsiArgs) -> Result<Finished> {
    check_x(cfg, args.x)?;
    let v = psi_progression_streaming(args.x, args.modulus, args.residue, &sieve_config(cfg))?;
    let phi = euler_phi(args.modulus);
    let result = serde_json::json!({
        "x": args.x,
        "modulus": args.modulus,
        "residue": args.residue,
        "psi": v.value.to_decimal(DIGITS),
        "x_over_phi": args.x / phi as f64,
    });
    Artifact::open(cfg, "psi", args)?.json(&result)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub qmin: f64,
    #[arg(long)]
    pub qmax: f64,
    /// Number of Q values, geometrically spaced.
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
}

pub fn sweep_s(cfg: &RunConfig, args: &SweepArgs) -> Result<Finished> {
    let n = check_x(cfg, args.x)?;
    if args.steps == 0 || !(args.qmin >= 2.0 && args.qmin <= args.qmax && args.qmax < args.x) {
        return Err(LabError::domain(format!(
            "need 2 <= qmin <= qmax < x and steps >= 1, got qmin = {}, qmax = {}, x = {}, steps = {}",
            args.qmin, args.qmax, args.x, args.steps
        )));
    }
    let lambda = DenseLambda::build(n)?;
    let ratio = if args.steps > 1 { (args.qmax / args.qmin).powf(1.0 / (args.steps - 1) as f64) } else { 1.0 };
    let rows = (0..args.steps)
        .map(|i| {
            let q = if i + 1 == args.steps { args.qmax } else { args.qmin * ratio.powi(i as i32) };
            s_identity(&lambda, q, args.x)
        })
        .collect::<Result<Vec<_>>>()?;
    Artifact::open(cfg, "sweep-s", args)?.csv(&[], &rows)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct BfiArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long = "Q")]
    pub q_bound: f64,
    #[arg(long, default_value_t = 1)]
    pub residue: u64,
    /// Also evaluate the zero route, truncated at this height.
    #[arg(long)]
    pub height: Option<f64>,
}

pub fn bfi(cfg: &RunConfig, args: &BfiArgs) -> Result<Finished> {
    let n = check_x(cfg, args.x)?;
    let lambda = DenseLambda::build(n)?;
    let report = match args.height {
        Some(h) => {
            let mut catalog = cfg.catalog()?;
            let lo = args.q_bound.floor() as u64 + 1;
            let hi = (2.0 * args.q_bound).floor() as u64;
            for q in lo..=hi {
                ensure_all(&mut catalog, q, h)?;
            }
            bfi_discrepancy(&lambda, args.q_bound, args.x, args.residue, Some((&catalog, h)))?
        }
        None => bfi_discrepancy(&lambda, args.q_bound, args.x, args.residue, None)?,
    };
    Artifact::open(cfg, "bfi", args)?.json(&report)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct ConstantsArgs {
    #[arg(long, default_value_t = 10)]
    pub digits: u32,
}

#[derive(Serialize)]
struct ConstantOut {
    name: &'static str,
    value: String,
    error_bound: f64,
    meets_request: bool,
}

pub fn constants(cfg: &RunConfig, args: &ConstantsArgs) -> Result<Finished> {
    if args.digits == 0 || args.digits > 28 {
        return Err(LabError::domain(format!("digits must lie in 1..=28, got {}", args.digits)));
    }
    let mut cutoff = cfg.prime_cutoff;
    let set = loop {
        let set = ConstantSet::at_cutoff(cutoff, args.digits)?;
        if set.all().iter().all(|c| c.meets_request()) {
            break set;
        }
        if cutoff.saturating_mul(2) > MAX_PRIME_CUTOFF {
            return Err(LabError::Resource(format!(
                "{} digits need a prime cutoff beyond {MAX_PRIME_CUTOFF}",
                args.digits
            )));
        }
        cutoff *= 2;
    };
    let shown = args.digits as usize + 4;
    let constants: Vec<ConstantOut> = set
        .all()
        .iter()
        .map(|c| ConstantOut {
            name: c.name,
            value: c.value.to_decimal(shown),
            error_bound: c.error_bound,
            meets_request: c.meets_request(),
        })
        .collect();
    let result = serde_json::json!({
        "digits": args.digits,
        "prime_cutoff": set.sums.cutoff,
        "constants": constants,
        "c1_euler_product": {
            "value": set.c1_euler_product.0.to_decimal(shown),
            "error_bound": set.c1_euler_product.1,
        },
        "prime_sums": {
            "log_over_pronic": set.sums.log_over_pronic.value.to_decimal(shown),
            "log_over_quadratic": set.sums.log_over_quadratic.value.to_decimal(shown),
        },
        "note": DIVERGENT_VARIANT_NOTE,
    });
    Artifact::open(cfg, "constants", args)?.json(&result)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct IterateArgs {
    #[arg(long)]
    pub eta: f64,
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
}

#[derive(Serialize)]
struct IterateRow {
    n: usize,
    value: f64,
    closed_form: f64,
    past_half: bool,
}

pub fn iterate(cfg: &RunConfig, args: &IterateArgs) -> Result<Finished> {
    let trace = iterate_trace(args.eta, args.nmax)?;
    let rows: Vec<IterateRow> = trace
        .values
        .iter()
        .enumerate()
        .map(|(n, &value)| IterateRow {
            n,
            value,
            closed_form: closed_form(args.eta, n),
            past_half: value > 0.5,
        })
        .collect();
    let stop = match trace.n_stop {
        Some(n) => format!("n_stop = {n}"),
        None => format!("n_stop not reached by n = {}", args.nmax),
    };
    let notes = [stop, format!("closed_form_deviation = {:e}", trace.closed_form_check)];
    Artifact::open(cfg, "iterate", args)?.csv(&notes, &rows)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct DistributionArgs {
    #[arg(long)]
    pub modulus: u64,
    #[arg(long, default_value_t = 1)]
    pub residue: u64,
    #[arg(long)]
    pub ymin: f64,
    #[arg(long)]
    pub ymax: f64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// T (sieve) or Tstar (zero sum).
    #[arg(long, default_value = "Tstar")]
    pub which: String,
    #[arg(long)]
    pub height: Option<f64>,
}

#[derive(Serialize)]
struct SampleRow {
    y: f64,
    value: f64,
    truncation_bound: Option<f64>,
}

pub fn distribution(cfg: &RunConfig, args: &DistributionArgs) -> Result<Finished> {
    let which: Which = args.which.parse()?;
    let height = cfg.height(args.height);
    let mut catalog = cfg.catalog()?;
    ensure_all(&mut catalog, args.modulus, height)?;
    let table = match which {
        Which::T => {
            let n = check_x(cfg, args.ymax.exp())?;
            Some(SieveTable::build_with(2, n, &sieve_config(cfg))?)
        }
        Which::Tstar => None,
    };
    let source = SampleSource { table: table.as_ref(), catalog: Some(&catalog), t_height: height };
    let series = sample_series(args.modulus, args.residue, args.ymin, args.ymax, args.samples, which, source)?;
    let report = moment_report(&series, &catalog, height)?;
    let rows: Vec<SampleRow> = series
        .y_grid
        .iter()
        .zip(&series.values)
        .enumerate()
        .map(|(i, (&y, &value))| SampleRow {
            y,
            value,
            truncation_bound: series.truncation_bounds.as_ref().map(|b| b[i]),
        })
        .collect();
    let notes = [format!("moments = {}", serde_json::to_string(&report).map_err(std::io::Error::from)?)];
    Artifact::open(cfg, "distribution", args)?.csv(&notes, &rows)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(long)]
    pub modulus: u64,
    #[arg(long)]
    pub kappa: f64,
    #[arg(long)]
    pub height: Option<f64>,
}

pub fn density(cfg: &RunConfig, args: &DensityArgs) -> Result<Finished> {
    let height = cfg.height(args.height);
    let mut catalog = cfg.catalog()?;
    ensure_all(&mut catalog, args.modulus, height)?;
    let report = one_level_density(&catalog, args.modulus, args.kappa, height)?;
    Artifact::open(cfg, "density", args)?.json(&report)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct ExplicitArgs {
    #[arg(long)]
    pub modulus: u64,
    #[arg(long)]
    pub x1: f64,
    #[arg(long)]
    pub x2: f64,
    #[arg(long)]
    pub height: Option<f64>,
}

#[derive(Serialize)]
struct ExplicitRow {
    label: String,
    x1: f64,
    x2: f64,
    height: f64,
    psi_difference_re: f64,
    psi_difference_im: f64,
    zero_difference_re: f64,
    zero_difference_im: f64,
    trivial_difference: f64,
    residual: f64,
    truncation_bound: f64,
}

pub fn explicit_check(cfg: &RunConfig, args: &ExplicitArgs) -> Result<Finished> {
    let height = cfg.height(args.height);
    let hi = check_x(cfg, args.x1.max(args.x2))?;
    let group = CharacterGroup::new(args.modulus)?;
    let chars: Vec<_> = group.characters().iter().filter(|c| !c.is_principal()).cloned().collect();
    if chars.is_empty() {
        return Err(LabError::domain(format!("no nonprincipal characters mod {}", args.modulus)));
    }
    let mut catalog = cfg.catalog()?;
    catalog.ensure(&chars, height)?;
    let table = SieveTable::build_with(2, hi, &sieve_config(cfg))?;
    let mut rows = Vec::new();
    for chi in &chars {
        let d = differenced_explicit_check(&table, &catalog, args.x1, args.x2, chi, height)?;
        let (pr, pi) = d.psi_difference.to_f64();
        let (zr, zi) = d.zero_difference.to_f64();
        rows.push(ExplicitRow {
            label: d.label,
            x1: d.x1,
            x2: d.x2,
            height: d.t_height,
            psi_difference_re: pr,
            psi_difference_im: pi,
            zero_difference_re: zr,
            zero_difference_im: zi,
            trivial_difference: d.trivial_difference,
            residual: d.residual,
            truncation_bound: d.truncation_bound,
        });
    }
    Artifact::open(cfg, "explicit-check", args)?.csv(&[], &rows)?;
    Ok(Finished::Ok)
}

#[derive(Args, Debug, Serialize)]
pub struct CentralArgs {
    #[arg(long)]
    pub qmax: u64,
}

#[derive(Serialize)]
struct CentralRow {
    label: String,
    abs_l_half: String,
    z: u32,
    status: &'static str,
    threshold: f64,
}

pub fn central(cfg: &RunConfig, args: &CentralArgs) -> Result<Finished> {
    let reports = central_sweep(args.qmax, cfg.vanishing_threshold)?;
    let flagged = reports.iter().filter(|r| r.flagged()).count();
    let escalated = reports.iter().filter(|r| r.status != CentralStatus::NonVanishing).count();
    let rows: Vec<CentralRow> = reports
        .iter()
        .map(|r| CentralRow {
            label: r.label.clone(),
            abs_l_half: r.l_half.abs().to_decimal(12),
            z: r.z_chi,
            status: match r.status {
                CentralStatus::NonVanishing => "nonvanishing",
                CentralStatus::ResolvedAfterEscalation => "resolved_after_escalation",
                CentralStatus::PossibleZero => "possible_zero",
            },
            threshold: r.vanishing_threshold,
        })
        .collect();
    let notes = [
        format!("characters = {}", reports.len()),
        format!("below_threshold = {escalated}"),
        format!("unresolved = {flagged}"),
    ];
    Artifact::open(cfg, "central-sweep", args)?.csv(&notes, &rows)?;
    Ok(if flagged > 0 { Finished::Flagged } else { Finished::Ok })
}
