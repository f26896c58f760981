//! Segmented sieve producing the von Mangoldt function on an interval.

use super::numtheory::max_power_exponent;
use crate::error::{LabError, Result};
use crate::precision::Dd;
use rayon::prelude::*;

pub const DEFAULT_SEGMENT: usize = 1 << 22;
pub const DEFAULT_MAX_END: u64 = 1_000_000_000;
pub const DEFAULT_MEMORY_BUDGET: usize = 2 << 30;

#[derive(Clone, Debug)]
pub struct SieveConfig {
    pub segment_size: usize,
    pub max_end: u64,
    /// Bytes allowed for the stored prime-power entries.
    pub memory_budget: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: DEFAULT_SEGMENT,
            max_end: DEFAULT_MAX_END,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Primes up to `limit` by the plain sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Base primes with their logarithms; `log p` is evaluated once per prime and
/// shared by every power of it.
struct BasePrimes {
    primes: Vec<u64>,
    logs: Vec<f64>,
}

impl BasePrimes {
    fn new(end: u64) -> Self {
        let primes = small_primes(isqrt(end));
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        BasePrimes { primes, logs }
    }
}

/// Sieve one segment `[lo, hi)` and return its prime powers in increasing order.
fn sieve_segment(base: &BasePrimes, lo: u64, hi: u64) -> Vec<(u64, f64)> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in &base.primes {
        if p * p >= hi {
            break;
        }
        let first = (p * p).max(lo.div_ceil(p) * p);
        let mut j = (first - lo) as usize;
        let step = p as usize;
        while j < len {
            composite[j] = true;
            j += step;
        }
    }
    let mut out: Vec<(u64, f64)> = Vec::with_capacity(len / 10 + 8);
    for (off, &c) in composite.iter().enumerate() {
        let n = lo + off as u64;
        if !c && n >= 2 {
            // base primes reuse their stored logarithm
            let l = match base.primes.binary_search(&n) {
                Ok(i) => base.logs[i],
                Err(_) => (n as f64).ln(),
            };
            out.push((n, l));
        }
    }
    // higher powers of base primes that land in this segment
    let mut powers = Vec::new();
    for (i, &p) in base.primes.iter().enumerate() {
        if p * p >= hi {
            break;
        }
        let mut pk = p * p;
        loop {
            if pk >= lo && pk < hi {
                powers.push((pk, base.logs[i]));
            }
            match pk.checked_mul(p) {
                Some(next) if next < hi => pk = next,
                _ => break,
            }
        }
    }
    if !powers.is_empty() {
        out.extend(powers);
        out.sort_unstable_by_key(|e| e.0);
    }
    out
}

fn check_range(start: u64, end: u64, config: &SieveConfig) -> Result<()> {
    if start < 2 || start > end {
        return Err(LabError::domain(format!(
            "sieve range must satisfy 2 <= start <= end, got [{start}, {end}]"
        )));
    }
    if end > config.max_end {
        return Err(LabError::Resource(format!(
            "sieve end {end} exceeds configured cap {}",
            config.max_end
        )));
    }
    Ok(())
}

fn segment_bounds(start: u64, end: u64, segment: usize) -> Vec<(u64, u64)> {
    let seg = segment.max(1024) as u64;
    let mut out = Vec::new();
    let mut lo = start;
    while lo <= end {
        let hi = (lo + seg).min(end + 1);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Run `f` on every segment's prime powers in parallel and return the
/// per-segment results in segment order. Only the segments in flight are held
/// in memory.
pub fn map_segments<T, F>(start: u64, end: u64, config: &SieveConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[(u64, f64)]) -> T + Sync,
{
    check_range(start, end, config)?;
    let base = BasePrimes::new(end);
    let bounds = segment_bounds(start, end, config.segment_size);
    Ok(bounds
        .par_iter()
        .map(|&(lo, hi)| f(&sieve_segment(&base, lo, hi)))
        .collect())
}

/// Exact table of `(n, Lambda(n))` for the prime powers in a range.
#[derive(Clone, Debug)]
pub struct SieveTable {
    range_start: u64,
    range_end: u64,
    n: Vec<u64>,
    lambda: Vec<f64>,
}

impl SieveTable {
    pub fn build(range_start: u64, range_end: u64) -> Result<Self> {
        Self::build_with(range_start, range_end, &SieveConfig::default())
    }

    pub fn build_with(range_start: u64, range_end: u64, config: &SieveConfig) -> Result<Self> {
        check_range(range_start, range_end, config)?;
        // prime powers in [a, b] are at most ~1.26 (b - a)/ln b + sqrt(b) for b >= 17
        let span = (range_end - range_start + 1) as f64;
        let estimate = 1.3 * span / (range_end as f64).ln().max(1.0) + (range_end as f64).sqrt() + 16.0;
        let bytes = estimate * 16.0;
        if bytes > config.memory_budget as f64 {
            return Err(LabError::Resource(format!(
                "sieve table for [{range_start}, {range_end}] needs about {:.0} MiB, budget is {} MiB",
                bytes / (1u64 << 20) as f64,
                config.memory_budget >> 20
            )));
        }
        let parts = map_segments(range_start, range_end, config, |seg| seg.to_vec())?;
        let total: usize = parts.iter().map(Vec::len).sum();
        let mut n = Vec::with_capacity(total);
        let mut lambda = Vec::with_capacity(total);
        for part in parts {
            for (k, l) in part {
                n.push(k);
                lambda.push(l);
            }
        }
        Ok(SieveTable {
            range_start,
            range_end,
            n,
            lambda,
        })
    }

    pub fn range_start(&self) -> u64 {
        self.range_start
    }

    pub fn range_end(&self) -> u64 {
        self.range_end
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.n.iter().copied().zip(self.lambda.iter().copied())
    }

    /// Entries with `n <= x`.
    pub fn entries_upto(&self, x: u64) -> (&[u64], &[f64]) {
        let k = self.n.partition_point(|&m| m <= x);
        (&self.n[..k], &self.lambda[..k])
    }

    /// `Lambda(n)`, zero for non-prime-powers inside the range.
    pub fn lambda(&self, n: u64) -> Option<f64> {
        if n < self.range_start || n > self.range_end {
            return None;
        }
        Some(match self.n.binary_search(&n) {
            Ok(i) => self.lambda[i],
            Err(_) => 0.0,
        })
    }

    /// Requires the table to start at 2 and cover `x`.
    pub fn covers(&self, x: u64) -> Result<()> {
        if self.range_start != 2 || x > self.range_end {
            return Err(LabError::Resource(format!(
                "sieve table [{}, {}] does not cover [2, {x}]",
                self.range_start, self.range_end
            )));
        }
        Ok(())
    }

    /// `psi(x)` accumulated with error-free transformations.
    pub fn psi_total(&self, x: u64) -> Result<Dd> {
        self.covers(x)?;
        let (_, l) = self.entries_upto(x);
        Ok(l.iter().copied().sum())
    }

    /// Dense `Lambda(n)` for `n` in `0..=x`.
    pub fn dense_upto(&self, x: u64) -> Result<Vec<f64>> {
        self.covers(x)?;
        let mut dense = vec![0.0; x as usize + 1];
        let (ns, ls) = self.entries_upto(x);
        for (&k, &l) in ns.iter().zip(ls) {
            dense[k as usize] = l;
        }
        Ok(dense)
    }

    /// Sum of `log p` over the prime powers `p^k <= x` of a single prime `p`.
    pub fn prime_power_mass(&self, p: u64, x: u64) -> f64 {
        let k = max_power_exponent(p, x);
        if k == 0 {
            return 0.0;
        }
        let lp = self.lambda(p).filter(|&l| l > 0.0).unwrap_or_else(|| (p as f64).ln());
        (Dd::from_f64(lp) * Dd::from_f64(k as f64)).to_f64()
    }
}
