//! Zero sets keyed by character label, optionally persisted as JSON lines
//! with one record per zero.

use super::zeros::{scan_family, LEvaluator, ScanConfig, ZeroSet};
use crate::characters::{CharacterGroup, DirichletCharacter};
use crate::error::{LabError, Result};
use crate::precision::Dd;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ZeroRecord {
    pub q: u64,
    pub label: String,
    pub gamma: String,
    pub prec_digits: u32,
    pub height_scanned: String,
}

/// Exclusive writer lock held as a sibling `.lock` file.
struct WriteLock {
    path: PathBuf,
}

impl WriteLock {
    fn acquire(cache: &Path) -> Result<Self> {
        let mut name = cache.as_os_str().to_owned();
        name.push(".lock");
        let path = PathBuf::from(name);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(WriteLock { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(LabError::Cache(format!(
                "zero cache {} is locked by another writer ({})",
                cache.display(),
                path.display()
            ))),
            Err(e) => Err(e.into()),
        }
    }
}

impl Drop for WriteLock {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

const GAMMA_DIGITS: usize = 32;

pub struct ZeroCatalog {
    path: Option<PathBuf>,
    sets: BTreeMap<String, ZeroSet>,
    scan: ScanConfig,
}

impl ZeroCatalog {
    /// A catalog that lives only in memory.
    pub fn in_memory(scan: ScanConfig) -> Self {
        ZeroCatalog {
            path: None,
            sets: BTreeMap::new(),
            scan,
        }
    }

    /// Load the cache at `path` if it exists; new zeros are appended there.
    pub fn open(path: impl Into<PathBuf>, scan: ScanConfig) -> Result<Self> {
        let path = path.into();
        let mut sets: BTreeMap<String, ZeroSet> = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: ZeroRecord = serde_json::from_str(&line).map_err(|e| {
                    LabError::Cache(format!("{}:{}: {e}", path.display(), lineno + 1))
                })?;
                let gamma = Dd::parse_decimal(&rec.gamma).ok_or_else(|| {
                    LabError::Cache(format!("{}:{}: bad ordinate {:?}", path.display(), lineno + 1, rec.gamma))
                })?;
                let height: f64 = rec.height_scanned.parse().map_err(|_| {
                    LabError::Cache(format!("{}:{}: bad height {:?}", path.display(), lineno + 1, rec.height_scanned))
                })?;
                let set = sets.entry(rec.label.clone()).or_insert_with(|| ZeroSet {
                    label: rec.label.clone(),
                    modulus: rec.q,
                    height: 0.0,
                    ordinates: Vec::new(),
                    multiplicities: Vec::new(),
                    precision_digits: rec.prec_digits,
                });
                set.height = set.height.max(height);
                set.precision_digits = set.precision_digits.min(rec.prec_digits);
                set.ordinates.push(gamma);
                set.multiplicities.push(1);
            }
        }
        for set in sets.values_mut() {
            set.ordinates.sort_by(|a, b| a.partial_cmp(b).unwrap());
            set.ordinates.dedup_by(|a, b| (*a - *b).abs().hi < 1e-20);
            set.multiplicities = vec![1; set.ordinates.len()];
        }
        Ok(ZeroCatalog {
            path: Some(path),
            sets,
            scan,
        })
    }

    pub fn scan_config(&self) -> &ScanConfig {
        &self.scan
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn sets(&self) -> impl Iterator<Item = &ZeroSet> {
        self.sets.values()
    }

    /// Cached zeros of the primitive character inducing `chi`, failing when
    /// they are not known up to `height`.
    pub fn lookup(&self, chi: &DirichletCharacter, height: f64) -> Result<&ZeroSet> {
        let star = chi.primitive_part();
        let label = star.label();
        match self.sets.get(&label) {
            Some(s) if s.height >= height => Ok(s),
            Some(s) => Err(LabError::InsufficientZeros {
                label,
                needed: height,
                available: s.height,
            }),
            None => Err(LabError::InsufficientZeros {
                label,
                needed: height,
                available: 0.0,
            }),
        }
    }

    /// Make sure every primitive nonprincipal character mod q is known to
    /// `height`, scanning (and persisting) whatever is missing.
    pub fn ensure_modulus(&mut self, q: u64, height: f64) -> Result<()> {
        let group = CharacterGroup::new(q)?;
        let chars: Vec<DirichletCharacter> = group
            .primitive_characters()
            .filter(|c| !c.is_principal())
            .cloned()
            .collect();
        self.ensure_characters(&chars, height)
    }

    /// As [`ensure_modulus`](Self::ensure_modulus) for the primitive parts of
    /// the given characters.
    pub fn ensure(&mut self, chars: &[DirichletCharacter], height: f64) -> Result<()> {
        let mut by_modulus: BTreeMap<u64, Vec<DirichletCharacter>> = BTreeMap::new();
        for c in chars {
            let star = c.primitive_part();
            if star.is_principal() {
                continue;
            }
            let list = by_modulus.entry(star.modulus()).or_default();
            if !list.contains(&star) {
                list.push(star);
            }
        }
        for (_, list) in by_modulus {
            self.ensure_characters(&list, height)?;
        }
        Ok(())
    }

    fn ensure_characters(&mut self, chars: &[DirichletCharacter], height: f64) -> Result<()> {
        // group by current coverage so each family scan shares its interval
        let mut by_start: BTreeMap<u64, Vec<DirichletCharacter>> = BTreeMap::new();
        for c in chars {
            let have = self.sets.get(&c.label()).map(|s| s.height).unwrap_or(0.0);
            if have < height {
                by_start.entry(have.to_bits()).or_default().push(c.clone());
            }
        }
        for (bits, family) in by_start {
            let start = f64::from_bits(bits);
            if start > 0.0 {
                self.verify(&family)?;
            }
            let fresh = scan_family(&family, start, height, &self.scan)?;
            self.append(&fresh)?;
            for set in fresh {
                match self.sets.get_mut(&set.label) {
                    Some(old) => {
                        old.ordinates.extend(set.ordinates);
                        old.multiplicities = vec![1; old.ordinates.len()];
                        old.height = set.height;
                    }
                    None => {
                        self.sets.insert(set.label.clone(), set);
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-evaluate cached ordinates before extending a set.
    fn verify(&self, family: &[DirichletCharacter]) -> Result<()> {
        for c in family {
            let Some(set) = self.sets.get(&c.label()) else { continue };
            let ev = LEvaluator::new(c, set.height, self.scan.em)?;
            let tol = 10f64.powi(-(set.precision_digits as i32 - 5));
            for g in &set.ordinates {
                let z = ev.z(*g)?;
                if z.abs().hi >= tol {
                    return Err(LabError::Cache(format!(
                        "cached ordinate {} of {} fails verification: |Z| = {:.3e}",
                        g.to_decimal(20),
                        c.label(),
                        z.abs().hi
                    )));
                }
            }
        }
        Ok(())
    }

    fn append(&self, sets: &[ZeroSet]) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let _lock = WriteLock::acquire(path)?;
        let mut buf = String::new();
        for set in sets {
            for g in &set.ordinates {
                let rec = ZeroRecord {
                    q: set.modulus,
                    label: set.label.clone(),
                    gamma: g.to_decimal(GAMMA_DIGITS),
                    prec_digits: set.precision_digits,
                    height_scanned: format!("{}", set.height),
                };
                buf.push_str(&serde_json::to_string(&rec).map_err(|e| LabError::Cache(e.to_string()))?);
                buf.push('\n');
            }
        }
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        f.write_all(buf.as_bytes())?;
        f.sync_data()?;
        Ok(())
    }

    /// Insert a set directly (no scan, no persistence).
    pub fn insert(&mut self, set: ZeroSet) {
        self.sets.insert(set.label.clone(), set);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_extend() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.jsonl");
        let chi = DirichletCharacter::from_label("4:1").unwrap();
        let first = {
            let mut cat = ZeroCatalog::open(&path, ScanConfig::default()).unwrap();
            cat.ensure(std::slice::from_ref(&chi), 12.0).unwrap();
            cat.lookup(&chi, 12.0).unwrap().clone()
        };
        let mut cat = ZeroCatalog::open(&path, ScanConfig::default()).unwrap();
        let again = cat.lookup(&chi, 12.0).unwrap();
        assert_eq!(again.ordinates.len(), first.ordinates.len());
        for (a, b) in again.ordinates.iter().zip(&first.ordinates) {
            assert!((*a - *b).abs().hi < 1e-28);
        }
        assert!(matches!(cat.lookup(&chi, 20.0), Err(LabError::InsufficientZeros { .. })));
        cat.ensure(std::slice::from_ref(&chi), 20.0).unwrap();
        let ext = cat.lookup(&chi, 20.0).unwrap();
        let fresh = super::super::zeros::scan_zeros(&chi, 20.0, 0.05).unwrap();
        assert_eq!(ext.ordinates.len(), fresh.ordinates.len());
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), fresh.ordinates.len());
        assert!(text.lines().next().unwrap().contains("\"label\":\"4:1\""));
    }

    #[test]
    fn lock_blocks_second_writer() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z.jsonl");
        let _held = WriteLock::acquire(&path).unwrap();
        assert!(matches!(WriteLock::acquire(&path), Err(LabError::Cache(_))));
    }
}
