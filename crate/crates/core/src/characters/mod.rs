//! Dirichlet characters modulo q.
//!
//! (Z/qZ)* is decomposed with the 2-part first (generators -1 and 5 when
//! 8 | q, only -1 when 4 || q) followed by the odd prime powers in ascending
//! order, each generated by its smallest primitive root. A character is the
//! tuple of exponents it assigns to these generators, and its values are kept
//! as exact angles `num / den` of roots of unity.

use crate::arith::numtheory::{factorize, gcd, lcm, smallest_primitive_root};
use crate::error::{LabError, Result};
use crate::precision::{ComplexValue, Dd};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_MODULUS: u64 = 1_000_000;

/// One cyclic factor of (Z/qZ)*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Generator as a residue mod q (lifted by CRT, 1 on the other factors).
    pub g: u64,
    /// Generator of the local factor, as a residue mod `local_modulus`.
    pub local_g: i64,
    pub order: u64,
    pub prime: u64,
    pub local_modulus: u64,
}

/// Discrete-log tables shared by every character of one modulus.
#[derive(Debug)]
pub struct GroupTables {
    modulus: u64,
    generators: Vec<Generator>,
    /// Exponent of the group, the common denominator of character angles.
    exponent: u64,
    /// `logs[n * k + j]` = log of n to generator j, `u32::MAX` off the units.
    logs: Vec<u32>,
}

impl GroupTables {
    fn build(q: u64) -> Self {
        let mut generators = Vec::new();
        let fac = factorize(q);
        let crt_lift = |m: u64, local: u64| -> u64 {
            // residue = local mod m, 1 mod q/m
            if m == q {
                return local % q;
            }
            let rest = q / m;
            let mut n = local % m;
            while n % rest != 1 % rest {
                n += m;
            }
            n
        };
        for &(p, e) in &fac {
            let m = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    generators.push(Generator {
                        g: crt_lift(m, m - 1),
                        local_g: -1,
                        order: 2,
                        prime: 2,
                        local_modulus: m,
                    });
                }
                if e >= 3 {
                    generators.push(Generator {
                        g: crt_lift(m, 5),
                        local_g: 5,
                        order: m / 4,
                        prime: 2,
                        local_modulus: m,
                    });
                }
            } else {
                let r = smallest_primitive_root(p, e);
                generators.push(Generator {
                    g: crt_lift(m, r),
                    local_g: r as i64,
                    order: m / p * (p - 1),
                    prime: p,
                    local_modulus: m,
                });
            }
        }
        let k = generators.len();
        let exponent = generators.iter().fold(1, |acc, g| lcm(acc, g.order));
        let mut logs = vec![u32::MAX; q as usize * k];
        // local log tables, one per prime-power factor
        let mut j = 0;
        for &(p, e) in &fac {
            let m = p.pow(e);
            if p == 2 && e <= 1 {
                continue;
            }
            let width = if p == 2 && e >= 3 { 2 } else { 1 };
            let mut local = vec![(u32::MAX, 0u32); m as usize];
            if p == 2 {
                let order5 = if e >= 3 { m / 4 } else { 1 };
                for s in 0..2u64 {
                    let mut v = if s == 0 { 1 } else { m - 1 };
                    for t in 0..order5 {
                        local[v as usize] = (s as u32, t as u32);
                        v = v * 5 % m;
                    }
                }
            } else {
                let g = generators[j].local_g as u64;
                let mut v = 1u64;
                for t in 0..generators[j].order {
                    local[v as usize] = (t as u32, 0);
                    v = v * g % m;
                }
            }
            for n in 0..q {
                let (a, b) = local[(n % m) as usize];
                let base = n as usize * k + j;
                logs[base] = a;
                if width == 2 {
                    logs[base + 1] = b;
                }
            }
            j += width;
        }
        if k > 0 {
            // zero out non-units consistently
            for n in 0..q {
                if gcd(n, q) != 1 {
                    for jj in 0..k {
                        logs[n as usize * k + jj] = u32::MAX;
                    }
                }
            }
        }
        GroupTables {
            modulus: q,
            generators,
            exponent,
            logs,
        }
    }

    /// Discrete logs of `n`, `None` when `gcd(n, q) > 1`.
    fn log(&self, n: u64) -> Option<&[u32]> {
        let k = self.generators.len();
        let r = (n % self.modulus) as usize;
        if k == 0 {
            return if self.modulus == 1 || n % 2 == 1 { Some(&[]) } else { None };
        }
        let s = &self.logs[r * k..r * k + k];
        if s[0] == u32::MAX {
            None
        } else {
            Some(s)
        }
    }
}

fn shared_tables(q: u64) -> Arc<GroupTables> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<GroupTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&q) {
        return t.clone();
    }
    let t = Arc::new(GroupTables::build(q));
    let mut guard = cache.lock().unwrap();
    guard.entry(q).or_insert(t).clone()
}

/// A root of unity `exp(2 pi i num / den)`, kept reduced with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub num: u64,
    pub den: u64,
}

impl RootOfUnity {
    pub fn new(num: u64, den: u64) -> Self {
        let num = num % den;
        let g = gcd(num, den).max(1);
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_complex(self) -> ComplexValue {
        angle_to_complex(self.num, self.den)
    }

    pub fn is_real(self) -> bool {
        self.den <= 2
    }
}

/// `exp(2 pi i num / den)` with exact values on the axes.
pub fn angle_to_complex(num: u64, den: u64) -> ComplexValue {
    let num = num % den;
    let g = gcd(num, den).max(1);
    let (n, d) = (num / g, den / g);
    match (n, d) {
        (0, _) => ComplexValue::ONE,
        (1, 2) => -ComplexValue::ONE,
        (1, 4) => ComplexValue::I,
        (3, 4) => -ComplexValue::I,
        _ => {
            let theta = (Dd::TWO_PI * Dd::from_f64(n as f64)).div_f64(d as f64);
            ComplexValue::cis(theta)
        }
    }
}

#[derive(Clone)]
pub struct DirichletCharacter {
    tables: Arc<GroupTables>,
    exponents: Vec<u64>,
    conductor: u64,
    parity: u8,
    is_real: bool,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletCharacter({})", self.label())
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn from_parts(tables: Arc<GroupTables>, exponents: Vec<u64>) -> Self {
        let gens = &tables.generators;
        let mut conductor = 1u64;
        let mut two_small = false; // -1 component nontrivial
        let mut two_big: Option<u64> = None; // order of the 5 component
        for (gen, &k) in gens.iter().zip(&exponents) {
            if k % gen.order == 0 {
                continue;
            }
            let order = gen.order / gcd(k, gen.order);
            if gen.prime == 2 {
                if gen.local_g == -1 {
                    two_small = true;
                } else {
                    two_big = Some(order);
                }
            } else {
                let mut v = 0;
                let mut o = order;
                while o % gen.prime == 0 {
                    o /= gen.prime;
                    v += 1;
                }
                conductor *= gen.prime.pow(1 + v);
            }
        }
        match two_big {
            // order 2^t on the 5 factor needs modulus 2^{t+2}
            Some(o) => conductor *= 4 * o,
            None if two_small => conductor *= 4,
            None => {}
        }
        let is_real = gens.iter().zip(&exponents).all(|(gen, &k)| (2 * k) % gen.order == 0);
        let mut chi = DirichletCharacter {
            tables,
            exponents,
            conductor,
            parity: 0,
            is_real,
        };
        let q = chi.modulus();
        if q > 2 && chi.angle(q - 1).map(|r| r.num != 0).unwrap_or(false) {
            chi.parity = 1;
        }
        chi
    }

    pub fn modulus(&self) -> u64 {
        self.tables.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn generators(&self) -> &[Generator] {
        &self.tables.generators
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.generators()
            .iter()
            .zip(&self.exponents)
            .fold(1, |acc, (g, &k)| lcm(acc, g.order / gcd(k, g.order)))
    }

    /// Exact value at `n`, `None` when `gcd(n, q) > 1`.
    pub fn angle(&self, n: u64) -> Option<RootOfUnity> {
        let logs = self.tables.log(n)?;
        let den = self.tables.exponent;
        let mut num = 0u64;
        for ((gen, &k), &l) in self.generators().iter().zip(&self.exponents).zip(logs) {
            let step = den / gen.order;
            num = (num + (k * l as u64 % gen.order) * step) % den;
        }
        Some(RootOfUnity::new(num, den))
    }

    /// Value at any integer, negative ones included.
    pub fn angle_i64(&self, n: i64) -> Option<RootOfUnity> {
        let q = self.modulus() as i64;
        self.angle(n.rem_euclid(q) as u64)
    }

    pub fn evaluate(&self, n: i64) -> ComplexValue {
        match self.angle_i64(n) {
            Some(r) => r.to_complex(),
            None => ComplexValue::ZERO,
        }
    }

    /// Values at every residue `0..q`, as complex numbers.
    pub fn value_table(&self) -> Vec<ComplexValue> {
        let den = self.tables.exponent;
        let mut cache: HashMap<u64, ComplexValue> = HashMap::new();
        (0..self.modulus())
            .map(|n| match self.angle(n) {
                Some(r) => *cache
                    .entry(r.num * (den / r.den))
                    .or_insert_with(|| r.to_complex()),
                None => ComplexValue::ZERO,
            })
            .collect()
    }

    pub fn conj(&self) -> DirichletCharacter {
        let exps = self
            .generators()
            .iter()
            .zip(&self.exponents)
            .map(|(g, &k)| (g.order - k % g.order) % g.order)
            .collect();
        DirichletCharacter::from_parts(self.tables.clone(), exps)
    }

    /// Pointwise product of two characters of the same modulus.
    pub fn mul(&self, other: &DirichletCharacter) -> Result<DirichletCharacter> {
        if self.modulus() != other.modulus() {
            return Err(LabError::domain("characters of different moduli"));
        }
        let exps = self
            .generators()
            .iter()
            .zip(self.exponents.iter().zip(&other.exponents))
            .map(|(g, (&a, &b))| (a + b) % g.order)
            .collect();
        Ok(DirichletCharacter::from_parts(self.tables.clone(), exps))
    }

    /// "q:k1,k2,..."
    pub fn label(&self) -> String {
        let ks: Vec<String> = self.exponents.iter().map(|k| k.to_string()).collect();
        format!("{}:{}", self.modulus(), ks.join(","))
    }

    pub fn from_label(label: &str) -> Result<DirichletCharacter> {
        let (q, rest) = label
            .split_once(':')
            .ok_or_else(|| LabError::domain(format!("malformed character label {label:?}")))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| LabError::domain(format!("malformed modulus in label {label:?}")))?;
        let exps: Vec<u64> = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| LabError::domain(format!("malformed exponents in label {label:?}")))?
        };
        DirichletCharacter::from_exponents(q, &exps)
    }

    pub fn from_exponents(q: u64, exponents: &[u64]) -> Result<DirichletCharacter> {
        check_modulus(q)?;
        let tables = shared_tables(q);
        if exponents.len() != tables.generators.len() {
            return Err(LabError::domain(format!(
                "modulus {q} has {} generators, got {} exponents",
                tables.generators.len(),
                exponents.len()
            )));
        }
        for (g, &k) in tables.generators.iter().zip(exponents) {
            if k >= g.order {
                return Err(LabError::domain(format!(
                    "exponent {k} out of range for generator {} of order {}",
                    g.g, g.order
                )));
            }
        }
        Ok(DirichletCharacter::from_parts(tables, exponents.to_vec()))
    }

    pub fn principal(q: u64) -> Result<DirichletCharacter> {
        check_modulus(q)?;
        let tables = shared_tables(q);
        let k = tables.generators.len();
        Ok(DirichletCharacter::from_parts(tables, vec![0; k]))
    }

    /// Conductor and the primitive character inducing this one.
    pub fn conductor_and_primitive_part(&self) -> (u64, DirichletCharacter) {
        let f = self.conductor;
        if f == self.modulus() {
            return (f, self.clone());
        }
        let tables = shared_tables(f);
        let q = self.modulus();
        let exps = tables
            .generators
            .iter()
            .map(|g| {
                // a unit mod q congruent to the generator mod f
                let mut n = g.g;
                while gcd(n, q) != 1 {
                    n += f;
                }
                let r = self.angle(n).expect("unit");
                // r = k / order for the generator's own order
                debug_assert_eq!((r.num * g.order) % r.den, 0);
                r.num * g.order / r.den
            })
            .collect();
        (f, DirichletCharacter::from_parts(tables, exps))
    }

    /// The primitive inducing character alone.
    pub fn primitive_part(&self) -> DirichletCharacter {
        self.conductor_and_primitive_part().1
    }

    /// `tau(chi) = sum_a chi(a) e(a/q)` summed exactly in angle space.
    pub fn gauss_sum(&self) -> ComplexValue {
        let q = self.modulus();
        let den = self.tables.exponent;
        let big = den as u128 * q as u128;
        let mut re = Vec::new();
        let mut im = Vec::new();
        for a in 1..=q {
            if let Some(r) = self.angle(a) {
                let num = ((r.num * (den / r.den)) as u128 * q as u128 + a as u128 * den as u128) % big;
                let g = gcd_u128(num, big);
                let v = angle_to_complex((num / g) as u64, (big / g) as u64);
                re.push(v.re);
                im.push(v.im);
            }
        }
        ComplexValue::new(re.into_iter().sum(), im.into_iter().sum())
    }

    /// `tau(chi) / (i^a sqrt(q))`, defined for primitive characters.
    pub fn root_number(&self) -> Result<ComplexValue> {
        if !self.is_primitive() {
            return Err(LabError::domain(format!(
                "root number needs a primitive character, {} has conductor {}",
                self.label(),
                self.conductor
            )));
        }
        let tau = self.gauss_sum();
        let sq = Dd::from_f64(self.modulus() as f64).sqrt();
        let denom = if self.parity == 1 {
            ComplexValue::new(Dd::ZERO, sq)
        } else {
            ComplexValue::real(sq)
        };
        Ok(tau / denom)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn check_modulus(q: u64) -> Result<()> {
    if q == 0 {
        return Err(LabError::domain("modulus must be at least 1"));
    }
    if q > MAX_MODULUS {
        return Err(LabError::Resource(format!(
            "modulus {q} exceeds the supported maximum {MAX_MODULUS}"
        )));
    }
    Ok(())
}

/// All characters modulo q in a fixed order (exponent tuples in
/// lexicographic order, last generator varying fastest).
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    tables: Arc<GroupTables>,
    characters: Vec<DirichletCharacter>,
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        check_modulus(q)?;
        let tables = shared_tables(q);
        let orders: Vec<u64> = tables.generators.iter().map(|g| g.order).collect();
        let total: u64 = orders.iter().product();
        let mut characters = Vec::with_capacity(total as usize);
        let mut exps = vec![0u64; orders.len()];
        for _ in 0..total {
            characters.push(DirichletCharacter::from_parts(tables.clone(), exps.clone()));
            for j in (0..exps.len()).rev() {
                exps[j] += 1;
                if exps[j] < orders[j] {
                    break;
                }
                exps[j] = 0;
            }
        }
        Ok(CharacterGroup { tables, characters })
    }

    pub fn modulus(&self) -> u64 {
        self.tables.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.tables.generators
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn principal(&self) -> &DirichletCharacter {
        &self.characters[0]
    }

    pub fn primitive_characters(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.characters.iter().filter(|c| c.is_primitive())
    }
}
