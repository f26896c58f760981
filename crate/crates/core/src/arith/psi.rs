//! Chebyshev sums over progressions and twisted by characters.

use super::numtheory::{distinct_prime_factors, euler_phi, gcd, max_power_exponent};
use super::sieve::{map_segments, SieveConfig, SieveTable};
use crate::characters::DirichletCharacter;
use crate::error::{LabError, Result};
use crate::precision::{ComplexValue, Dd};

/// Which sum a [`PsiValue`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residue {
    Class(u64),
    /// Sum over `n` coprime to the modulus.
    Principal,
}

#[derive(Clone, Copy, Debug)]
pub struct PsiValue {
    pub x: f64,
    pub modulus: u64,
    pub residue: Residue,
    pub value: Dd,
}

fn floor_x(x: f64) -> Result<u64> {
    if !x.is_finite() || x < 2.0 {
        return Err(LabError::domain(format!("psi needs x >= 2, got {x}")));
    }
    Ok(x.floor() as u64)
}

fn check_unit(q: u64, a: u64) -> Result<()> {
    if q == 0 {
        return Err(LabError::domain("modulus must be at least 1"));
    }
    if gcd(a % q, q) != 1 {
        return Err(LabError::domain(format!("residue {a} is not a unit mod {q}")));
    }
    Ok(())
}

/// `sum_{n <= x, n = a mod q} Lambda(n)`.
pub fn psi_progression(table: &SieveTable, x: f64, q: u64, a: u64) -> Result<PsiValue> {
    check_unit(q, a)?;
    let n = floor_x(x)?;
    table.covers(n)?;
    let r = a % q;
    let (ns, ls) = table.entries_upto(n);
    let value = ns
        .iter()
        .zip(ls)
        .filter(|(&k, _)| k % q == r)
        .map(|(_, &l)| l)
        .sum();
    Ok(PsiValue {
        x,
        modulus: q,
        residue: Residue::Class(r),
        value,
    })
}

/// Prime-power mass removed by the principal character: `sum_{p | q} log p * floor(log_p x)`.
pub fn principal_defect(q: u64, n: u64) -> Dd {
    distinct_prime_factors(q)
        .into_iter()
        .map(|p| Dd::from_f64((p as f64).ln()).mul_f64(max_power_exponent(p, n) as f64))
        .sum()
}

/// `sum_{n <= x, (n, q) = 1} Lambda(n)`.
pub fn psi_principal(table: &SieveTable, x: f64, q: u64) -> Result<PsiValue> {
    if q == 0 {
        return Err(LabError::domain("modulus must be at least 1"));
    }
    let n = floor_x(x)?;
    let total = table.psi_total(n)?;
    Ok(PsiValue {
        x,
        modulus: q,
        residue: Residue::Principal,
        value: total - principal_defect(q, n),
    })
}

/// Sums of `Lambda(n)` over `n <= x` split by residue class mod q.
pub fn residue_sums(table: &SieveTable, n: u64, q: u64) -> Result<Vec<Dd>> {
    table.covers(n)?;
    let mut acc = vec![Dd::ZERO; q as usize];
    let (ns, ls) = table.entries_upto(n);
    for (&k, &l) in ns.iter().zip(ls) {
        let r = (k % q) as usize;
        acc[r] = acc[r].add_f64(l);
    }
    Ok(acc)
}

/// `sum_{n <= x} chi(n) Lambda(n)`, grouped by residue class before the
/// character values are applied.
pub fn psi_character(table: &SieveTable, x: f64, chi: &DirichletCharacter) -> Result<ComplexValue> {
    let n = floor_x(x)?;
    let q = chi.modulus();
    let sums = residue_sums(table, n, q)?;
    let values = chi.value_table();
    let mut re = Vec::with_capacity(q as usize);
    let mut im = Vec::with_capacity(q as usize);
    for (s, v) in sums.iter().zip(&values) {
        if s.hi != 0.0 && (v.re.hi != 0.0 || v.im.hi != 0.0) {
            re.push(*s * v.re);
            im.push(*s * v.im);
        }
    }
    Ok(ComplexValue::new(re.into_iter().sum(), im.into_iter().sum()))
}

/// `psi(x; q, a)` by streaming the sieve, without storing the table. Used for
/// x beyond what a stored table comfortably holds.
pub fn psi_progression_streaming(x: f64, q: u64, a: u64, config: &SieveConfig) -> Result<PsiValue> {
    check_unit(q, a)?;
    let n = floor_x(x)?;
    let r = a % q;
    let parts = map_segments(2, n, config, |seg| {
        seg.iter()
            .filter(|(k, _)| k % q == r)
            .map(|&(_, l)| l)
            .sum::<Dd>()
    })?;
    Ok(PsiValue {
        x,
        modulus: q,
        residue: Residue::Class(r),
        value: parts.into_iter().sum(),
    })
}

/// `Lambda(n)` stored densely for `n <= limit`, for the many strided
/// progression sums needed by the q-averaged aggregates.
#[derive(Clone, Debug)]
pub struct DenseLambda {
    lambda: Vec<f64>,
    psi_total: Dd,
}

impl DenseLambda {
    pub fn from_table(table: &SieveTable, limit: u64) -> Result<Self> {
        let lambda = table.dense_upto(limit)?;
        let psi_total = lambda.iter().copied().sum();
        Ok(DenseLambda { lambda, psi_total })
    }

    pub fn build(limit: u64) -> Result<Self> {
        let table = SieveTable::build(2, limit.max(2))?;
        Self::from_table(&table, limit.max(2))
    }

    pub fn limit(&self) -> u64 {
        self.lambda.len() as u64 - 1
    }

    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    /// `psi(n; q, a)` for integer `n`; the residue is not checked for coprimality.
    pub fn psi_ap(&self, n: u64, q: u64, a: u64) -> Dd {
        self.psi_ap_between(0, n, q, a)
    }

    /// Sum of `Lambda(k)` over `lo < k <= hi`, `k = a mod q`.
    pub fn psi_ap_between(&self, lo: u64, hi: u64, q: u64, a: u64) -> Dd {
        let hi = hi.min(self.limit());
        let a = a % q;
        // first k > lo with k = a mod q
        let mut k = lo + 1 + (a + q - (lo + 1) % q) % q;
        let mut acc = Dd::ZERO;
        while k <= hi {
            let l = self.lambda[k as usize];
            if l != 0.0 {
                acc = acc.add_f64(l);
            }
            k += q;
        }
        acc
    }

    /// `psi(limit)`.
    pub fn psi_total(&self) -> Dd {
        self.psi_total
    }

    pub fn psi_principal(&self, n: u64, q: u64) -> Dd {
        let n = n.min(self.limit());
        let total = if n == self.limit() {
            self.psi_total
        } else {
            self.lambda[..=n as usize].iter().copied().sum()
        };
        total - principal_defect(q, n)
    }
}

/// Running per-residue sums for evaluating `psi(x; q, a)` and
/// `psi(x; chi_0)` at an increasing sequence of `x`.
pub struct ProgressionCounter<'a> {
    ns: &'a [u64],
    ls: &'a [f64],
    pos: usize,
    q: u64,
    sums: Vec<Dd>,
    total: Dd,
}

impl<'a> ProgressionCounter<'a> {
    pub fn new(table: &'a SieveTable, q: u64) -> Result<Self> {
        table.covers(2)?;
        let (ns, ls) = table.entries_upto(table.range_end());
        Ok(ProgressionCounter {
            ns,
            ls,
            pos: 0,
            q,
            sums: vec![Dd::ZERO; q as usize],
            total: Dd::ZERO,
        })
    }

    /// Advance to `n`, which must not decrease between calls.
    pub fn advance(&mut self, n: u64) {
        while self.pos < self.ns.len() && self.ns[self.pos] <= n {
            let r = (self.ns[self.pos] % self.q) as usize;
            let l = self.ls[self.pos];
            self.sums[r] = self.sums[r].add_f64(l);
            self.total = self.total.add_f64(l);
            self.pos += 1;
        }
    }

    pub fn residue(&self, a: u64) -> Dd {
        self.sums[(a % self.q) as usize]
    }

    pub fn principal(&self, n: u64) -> Dd {
        self.total - principal_defect(self.q, n)
    }

    pub fn residue_sums(&self) -> &[Dd] {
        &self.sums
    }
}

/// `phi(q)` as a float, a convenience for normalizations.
pub fn phi_f64(q: u64) -> f64 {
    euler_phi(q) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u64) -> SieveTable {
        SieveTable::build(2, n).unwrap()
    }

    #[test]
    fn small_progressions() {
        let t = table(100);
        let v = psi_progression(&t, 10.0, 4, 1).unwrap().value;
        assert!((v.to_f64() - (5f64.ln() + 3f64.ln())).abs() < 1e-15);
        let p = psi_principal(&t, 10.0, 2).unwrap().value.to_f64();
        let want = 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((p - want).abs() < 1e-14);
        assert!(matches!(psi_progression(&t, 10.0, 4, 2), Err(LabError::Domain(_))));
        assert!(matches!(psi_progression(&t, 1.5, 4, 1), Err(LabError::Domain(_))));
        assert!(matches!(psi_progression(&t, 1000.0, 4, 1), Err(LabError::Resource(_))));
    }

    #[test]
    fn dense_agrees_with_table() {
        let t = table(5000);
        let d = DenseLambda::from_table(&t, 5000).unwrap();
        for q in [1u64, 3, 7, 12] {
            for a in 1..q.max(2) {
                if gcd(a, q) != 1 {
                    continue;
                }
                let x = psi_progression(&t, 4321.0, q, a).unwrap().value;
                assert!((x - d.psi_ap(4321, q, a)).abs().hi < 1e-20);
            }
            let p = psi_principal(&t, 4321.0, q).unwrap().value;
            assert!((p - d.psi_principal(4321, q)).abs().hi < 1e-20);
        }
    }

    #[test]
    fn streaming_matches_table() {
        let t = table(200_000);
        let cfg = SieveConfig {
            segment_size: 4096,
            ..Default::default()
        };
        let a = psi_progression(&t, 200_000.0, 7, 2).unwrap().value;
        let b = psi_progression_streaming(200_000.0, 7, 2, &cfg).unwrap().value;
        assert!((a - b).abs().hi < 1e-20);
    }

    #[test]
    fn counter_tracks_table() {
        let t = table(10_000);
        let mut c = ProgressionCounter::new(&t, 5).unwrap();
        for n in [10u64, 100, 1000, 10_000] {
            c.advance(n);
            let want = psi_progression(&t, n as f64, 5, 2).unwrap().value;
            assert!((c.residue(2) - want).abs().hi < 1e-20);
            let want = psi_principal(&t, n as f64, 5).unwrap().value;
            assert!((c.principal(n) - want).abs().hi < 1e-20);
        }
    }
}
