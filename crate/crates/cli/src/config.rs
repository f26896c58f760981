use clap::Args;
use dirichlet_lab::lfunc::zeros::{DEFAULT_GRID_STEP, DEFAULT_PRECISION_DIGITS};
use dirichlet_lab::lfunc::{ScanConfig, ZeroCatalog};
use dirichlet_lab::{LabError, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;

/// Settings shared by every subcommand. All of them enter the config hash
/// except the thread count and the file locations, which never change
/// results.
#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Working precision of the L-function paths, in decimal digits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_DIGITS)]
    pub precision_digits: u32,

    /// Primes up to this bound are summed directly for the constants.
    #[arg(long, global = true, default_value_t = dirichlet_lab::constants::DEFAULT_PRIME_CUTOFF)]
    pub prime_cutoff: u64,

    /// Largest x the sieve may be asked for.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    pub sieve_cap: u64,

    /// Initial grid step of the sign-change scan.
    #[arg(long, global = true, default_value_t = DEFAULT_GRID_STEP)]
    pub zero_grid_step: f64,

    /// Zero height used when a subcommand does not set one.
    #[arg(long, global = true, default_value_t = 50.0)]
    pub zero_height_default: f64,

    /// |L(1/2, chi)| below this triggers a precision escalation.
    #[arg(long, global = true, default_value_t = dirichlet_lab::lfunc::central::DEFAULT_THRESHOLD)]
    pub vanishing_threshold: f64,

    /// JSON-lines zero cache; zeros are kept in memory when unset.
    #[arg(long, global = true, env = "DLAB_CACHE")]
    #[serde(skip)]
    pub cache_path: Option<PathBuf>,

    /// Output file; standard output when unset.
    #[arg(long = "output", short = 'o', visible_alias = "out", global = true)]
    #[serde(skip)]
    pub output_path: Option<PathBuf>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, global = true, env = "DLAB_THREADS")]
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("prime-cutoff", self.prime_cutoff as f64),
            ("sieve-cap", self.sieve_cap as f64),
            ("zero-grid-step", self.zero_grid_step),
            ("zero-height-default", self.zero_height_default),
            ("vanishing-threshold", self.vanishing_threshold),
            ("seed", self.seed as f64),
        ];
        for (name, v) in positive {
            if v.is_nan() || v <= 0.0 || !v.is_finite() {
                return Err(LabError::domain(format!("--{name} must be positive, got {v}")));
            }
        }
        if self.precision_digits < 30 {
            return Err(LabError::domain(format!(
                "--precision-digits must be at least 30, got {}",
                self.precision_digits
            )));
        }
        if self.threads == Some(0) {
            return Err(LabError::domain("thread count must be positive"));
        }
        Ok(())
    }

    pub fn scan_config(&self) -> ScanConfig {
        ScanConfig {
            grid_step: self.zero_grid_step,
            precision_digits: self.precision_digits,
            ..ScanConfig::default()
        }
    }

    pub fn catalog(&self) -> Result<ZeroCatalog> {
        match &self.cache_path {
            Some(p) => ZeroCatalog::open(p, self.scan_config()),
            None => Ok(ZeroCatalog::in_memory(self.scan_config())),
        }
    }

    pub fn height(&self, given: Option<f64>) -> f64 {
        given.unwrap_or(self.zero_height_default)
    }
}

/// SHA-256 over the canonical JSON of the run config and the command's own
/// arguments.
pub fn config_hash<C: Serialize>(config: &RunConfig, command: &C) -> String {
    let blob = serde_json::json!({ "config": config, "command": command });
    hex::encode(Sha256::digest(blob.to_string().as_bytes()))
}
