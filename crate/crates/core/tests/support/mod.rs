//! Reference computations for integration tests, written against arbitrary
//! precision floats and sharing no numerical code with the crate.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use dirichlet_lab::characters::DirichletCharacter;

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Oracle {
    cc: Consts,
    bernoulli: Vec<BigFloat>,
}

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn bi(x: i64) -> BigFloat {
    BigFloat::from_i64(x, PREC)
}

impl Cx {
    fn zero() -> Self {
        Cx { re: bi(0), im: bi(0) }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx { re: self.re.add(&o.re, PREC, RM), im: self.im.add(&o.im, PREC, RM) }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx { re: self.re.sub(&o.re, PREC, RM), im: self.im.sub(&o.im, PREC, RM) }
    }

    fn mul(&self, o: &Cx) -> Cx {
        let re = self.re.mul(&o.re, PREC, RM).sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.re.mul(&o.im, PREC, RM).add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Cx { re, im }
    }

    fn scale(&self, k: &BigFloat) -> Cx {
        Cx { re: self.re.mul(k, PREC, RM), im: self.im.mul(k, PREC, RM) }
    }

    fn div(&self, o: &Cx) -> Cx {
        let d = o.re.mul(&o.re, PREC, RM).add(&o.im.mul(&o.im, PREC, RM), PREC, RM);
        let num = self.mul(&Cx { re: o.re.clone(), im: o.im.neg() });
        Cx { re: num.re.div(&d, PREC, RM), im: num.im.div(&d, PREC, RM) }
    }

    pub fn abs_f64(&self, o: &mut Oracle) -> f64 {
        let a = to_f64(&self.re, &mut o.cc);
        let b = to_f64(&self.im, &mut o.cc);
        a.hypot(b)
    }
}

pub fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    x.format(Radix::Dec, RM, cc).unwrap().parse().unwrap()
}

impl Oracle {
    pub fn new(terms: usize) -> Self {
        let mut cc = Consts::new().unwrap();
        // B_n from sum_{k<=n} C(n+1, k) B_k = 0, at doubled working precision
        let wp = 2 * PREC;
        let mut b: Vec<BigFloat> = vec![BigFloat::from_i64(1, wp)];
        for n in 1..=2 * terms {
            let mut acc = BigFloat::from_i64(0, wp);
            let mut binom = BigFloat::from_i64(1, wp);
            for (k, bk) in b.iter().enumerate() {
                acc = acc.add(&binom.mul(bk, wp, RM), wp, RM);
                // C(n+1, k+1) = C(n+1, k) (n+1-k)/(k+1)
                binom = binom
                    .mul(&BigFloat::from_i64((n + 1 - k) as i64, wp), wp, RM)
                    .div(&BigFloat::from_i64((k + 1) as i64, wp), wp, RM);
            }
            let bn = acc.neg().div(&BigFloat::from_i64((n + 1) as i64, wp), wp, RM);
            b.push(bn);
        }
        let _ = &mut cc;
        Oracle { cc, bernoulli: b }
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(PREC, RM)
    }

    /// `exp(-s log v)` for real `v > 0` given as `log v`.
    fn power(&mut self, log_v: &BigFloat, s: &Cx) -> Cx {
        let mag = s.re.mul(log_v, PREC, RM).neg().exp(PREC, RM, &mut self.cc);
        let ang = s.im.mul(log_v, PREC, RM);
        let c = ang.cos(PREC, RM, &mut self.cc);
        let sn = ang.sin(PREC, RM, &mut self.cc).neg();
        Cx { re: mag.mul(&c, PREC, RM), im: mag.mul(&sn, PREC, RM) }
    }

    /// `zeta(s, num/den)` by Euler-Maclaurin with `n` direct terms.
    pub fn hurwitz(&mut self, s: &Cx, num: u64, den: u64, n: usize, terms: usize) -> Cx {
        let log_den = bi(den as i64).ln(PREC, RM, &mut self.cc);
        let log_of = |o: &mut Oracle, k: u64| bi((k * den + num) as i64).ln(PREC, RM, &mut o.cc).sub(&log_den, PREC, RM);
        let mut acc = Cx::zero();
        for k in 0..n as u64 {
            let l = log_of(self, k);
            acc = acc.add(&self.power(&l, s));
        }
        let l_n = log_of(self, n as u64);
        let v_n = bi((n as u64 * den + num) as i64).div(&bi(den as i64), PREC, RM);
        let p_n = self.power(&l_n, s); // v^-s
        // v^(1-s)/(s-1)
        let s_minus_1 = Cx { re: s.re.sub(&bi(1), PREC, RM), im: s.im.clone() };
        acc = acc.add(&p_n.scale(&v_n).div(&s_minus_1));
        acc = acc.add(&p_n.scale(&bf(0.5)));
        // sum B_2k/(2k)! s(s+1)...(s+2k-2) v^(-s-2k+1)
        let inv_v = bi(1).div(&v_n, PREC, RM);
        let inv_v2 = inv_v.mul(&inv_v, PREC, RM);
        let mut rising = s.clone();
        let mut vpow = p_n.scale(&inv_v);
        let mut fact = bi(2);
        for k in 1..=terms {
            let coeff = self.bernoulli[2 * k].div(&fact, PREC, RM);
            acc = acc.add(&rising.mul(&vpow).scale(&coeff));
            // advance to k + 1
            let a = Cx { re: s.re.add(&bi(2 * k as i64 - 1), PREC, RM), im: s.im.clone() };
            let b = Cx { re: s.re.add(&bi(2 * k as i64), PREC, RM), im: s.im.clone() };
            rising = rising.mul(&a).mul(&b);
            vpow = vpow.scale(&inv_v2);
            fact = fact.mul(&bi((2 * k + 1) as i64 * (2 * k + 2) as i64), PREC, RM);
        }
        acc
    }

    /// `L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q)`.
    pub fn l_value(&mut self, chi: &DirichletCharacter, s: &Cx) -> Cx {
        let q = chi.modulus();
        let two_pi = self.pi().mul(&bi(2), PREC, RM);
        let mut acc = Cx::zero();
        for a in 1..=q {
            let Some(r) = chi.angle(a) else { continue };
            let theta = two_pi.mul(&bi(r.num as i64), PREC, RM).div(&bi(r.den as i64), PREC, RM);
            let val = Cx { re: theta.cos(PREC, RM, &mut self.cc), im: theta.sin(PREC, RM, &mut self.cc) };
            let z = self.hurwitz(s, a, q, 40, 40);
            acc = acc.add(&val.mul(&z));
        }
        let log_q = bi(q as i64).ln(PREC, RM, &mut self.cc);
        self.power(&log_q, s).mul(&acc)
    }

    pub fn on_line(&mut self, chi: &DirichletCharacter, t: &BigFloat) -> Cx {
        let s = Cx { re: bf(0.5), im: t.clone() };
        self.l_value(chi, &s)
    }

    /// Zero of `L(1/2 + it, chi)` near `guess` by the complex secant method
    /// in `t`.
    pub fn refine_zero(&mut self, chi: &DirichletCharacter, guess: f64) -> f64 {
        let mut t0 = bf(guess - 1e-6);
        let mut t1 = bf(guess + 1e-6);
        let mut f0 = self.on_line(chi, &t0);
        let mut f1 = self.on_line(chi, &t1);
        for _ in 0..30 {
            let dt = t1.sub(&t0, PREC, RM);
            let df = f1.sub(&f0);
            let step = f1.div(&df).scale(&dt);
            let t2 = t1.sub(&step.re, PREC, RM);
            let moved = to_f64(&step.re, &mut self.cc).abs();
            t0 = t1;
            f0 = f1;
            t1 = t2;
            f1 = self.on_line(chi, &t1);
            if moved < 1e-25 {
                break;
            }
        }
        to_f64(&t1, &mut self.cc)
    }

    pub fn consts(&mut self) -> &mut Consts {
        &mut self.cc
    }
}

/// Catalan's constant, for a self-check of the oracle.
pub const CATALAN: f64 = 0.915_965_594_177_219;

pub fn bigfloat(x: f64) -> BigFloat {
    bf(x)
}
