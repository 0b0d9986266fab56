//! Products of archimedean gamma factors `Γ_R(s+a)`, `Γ_C(s+a)` with exact
//! elementary prefactors, their normal form, the surface gamma factor and the
//! rational factor `Q(s)`.
//!
//! Conventions: `Γ_R(s) = π^{−s/2}Γ(s/2)` and `Γ_C(s) = 2(2π)^{−s}Γ(s)`.
//! With these, `Γ_R(s)Γ_R(s+1) = Γ_C(s)`, `Γ_R(s+2) = s/(2π)·Γ_R(s)` and
//! `Γ_C(s+1) = s/(2π)·Γ_C(s)` hold without stray constants.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::special::{gamma_pole_distance, ln_gamma_c, ln_gamma_r, POLE_EPS};
use crate::error::{Error, Result};
use crate::exact::{rat_pow, rint, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GammaKind {
    R,
    C,
}

/// `c · π^a · 2^b · ∏ (s + k)^{m_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Prefactor {
    pub c: Rat,
    pub pi_exp: i64,
    pub two_exp: i64,
    pub linear: BTreeMap<i64, i64>,
}

impl Default for Prefactor {
    fn default() -> Self {
        Self {
            c: Rat::one(),
            pi_exp: 0,
            two_exp: 0,
            linear: BTreeMap::new(),
        }
    }
}

impl Prefactor {
    fn mul_linear(&mut self, k: i64, m: i64) {
        let e = self.linear.entry(k).or_insert(0);
        *e += m;
        if *e == 0 {
            self.linear.remove(&k);
        }
    }

    /// Multiplies by `((s+k)/(2π))^m`.
    fn mul_step(&mut self, k: i64, m: i64) {
        self.mul_linear(k, m);
        self.pi_exp -= m;
        self.two_exp -= m;
    }

    fn mul(&mut self, o: &Prefactor, e: i64) {
        self.c *= rat_pow(&o.c, e);
        self.pi_exp += o.pi_exp * e;
        self.two_exp += o.two_exp * e;
        for (k, m) in &o.linear {
            self.mul_linear(*k, m * e);
        }
    }

    fn fold_twos(&mut self) {
        // Powers of two live in `two_exp`; keep `c` free of them.
        let two = rint(2);
        while !self.c.is_zero() && self.c.numer() % 2 == num_bigint::BigInt::zero() {
            self.c /= &two;
            self.two_exp += 1;
        }
        while !self.c.is_zero() && self.c.denom() % 2 == num_bigint::BigInt::zero() {
            self.c *= &two;
            self.two_exp -= 1;
        }
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let mut v = Complex64::new(self.c.to_f64().unwrap_or(f64::NAN), 0.0);
        v *= PI.powi(self.pi_exp as i32) * 2f64.powi(self.two_exp as i32);
        for (k, m) in &self.linear {
            let z = s + *k as f64;
            if *m < 0 && z.norm() < POLE_EPS {
                return Err(Error::Pole(format!("(s{k:+}) at s = {s}")));
            }
            v *= z.powi(*m as i32);
        }
        Ok(v)
    }

    /// The constant part `c · π^a · 2^b`.
    pub fn constant(&self) -> ExactConst {
        ExactConst {
            c: self.c.clone(),
            pi_exp: self.pi_exp,
            two_exp: self.two_exp,
        }
    }
}

/// Exact constant `c · π^a · 2^b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactConst {
    pub c: Rat,
    pub pi_exp: i64,
    pub two_exp: i64,
}

impl ExactConst {
    pub fn to_f64(&self) -> f64 {
        self.c.to_f64().unwrap_or(f64::NAN)
            * PI.powi(self.pi_exp as i32)
            * 2f64.powi(self.two_exp as i32)
    }
}

impl fmt::Display for ExactConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.c.is_one() || (self.pi_exp == 0 && self.two_exp == 0) {
            parts.push(self.c.to_string());
        }
        let common = if self.pi_exp.signum() == self.two_exp.signum() {
            self.pi_exp.abs().min(self.two_exp.abs()) * self.pi_exp.signum()
        } else {
            0
        };
        if common != 0 {
            parts.push(format!("(2π)^{common}"));
        }
        if self.two_exp != common {
            parts.push(format!("2^{}", self.two_exp - common));
        }
        if self.pi_exp != common {
            parts.push(format!("π^{}", self.pi_exp - common));
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// `prefactor · ∏ Γ_kind(s + shift)^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaProduct {
    pub factors: BTreeMap<(GammaKind, i64), i64>,
    pub prefactor: Prefactor,
}

impl GammaProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn factor(kind: GammaKind, shift: i64, exp: i64) -> Self {
        let mut g = Self::one();
        g.push(kind, shift, exp);
        g
    }

    pub fn push(&mut self, kind: GammaKind, shift: i64, exp: i64) {
        let e = self.factors.entry((kind, shift)).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.factors.remove(&(kind, shift));
        }
    }

    pub fn mul(&self, o: &GammaProduct) -> GammaProduct {
        self.mul_pow(o, 1)
    }

    pub fn div(&self, o: &GammaProduct) -> GammaProduct {
        self.mul_pow(o, -1)
    }

    /// `self · o^e`.
    pub fn mul_pow(&self, o: &GammaProduct, e: i64) -> GammaProduct {
        let mut out = self.clone();
        for ((k, a), m) in &o.factors {
            out.push(*k, *a, m * e);
        }
        out.prefactor.mul(&o.prefactor, e);
        out
    }

    pub fn pow(&self, e: i64) -> GammaProduct {
        GammaProduct::one().mul_pow(self, e)
    }

    pub fn is_gamma_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        eval_gamma(self, s)
    }
}

/// Value-preserving identities, each an expression equal to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaIdentity {
    /// `Γ_C(s+a) / (Γ_R(s+a) Γ_R(s+a+1))`.
    Duplication(i64),
    /// `Γ_R(s+a+2) / ((s+a)/(2π) · Γ_R(s+a))`.
    StepR(i64),
    /// `Γ_C(s+a+1) / ((s+a)/(2π) · Γ_C(s+a))`.
    StepC(i64),
}

/// `g · identity^e`.
pub fn apply_identity(g: &GammaProduct, id: GammaIdentity, e: i64) -> GammaProduct {
    let mut out = g.clone();
    match id {
        GammaIdentity::Duplication(a) => {
            out.push(GammaKind::C, a, e);
            out.push(GammaKind::R, a, -e);
            out.push(GammaKind::R, a + 1, -e);
        }
        GammaIdentity::StepR(a) => {
            out.push(GammaKind::R, a + 2, e);
            out.push(GammaKind::R, a, -e);
            out.prefactor.mul_step(a, -e);
        }
        GammaIdentity::StepC(a) => {
            out.push(GammaKind::C, a + 1, e);
            out.push(GammaKind::C, a, -e);
            out.prefactor.mul_step(a, -e);
        }
    }
    out
}

/// Canonical form: every factor moved to the window `Γ_R(s)`, `Γ_R(s+1)`,
/// `Γ_C(s)`, with duplication applied to like-signed `Γ_R` pairs.
pub fn normal_form(g: &GammaProduct) -> GammaProduct {
    let mut pre = g.prefactor.clone();
    let (mut e0, mut e1) = (0i64, 0i64);
    for ((kind, a), m) in &g.factors {
        match kind {
            GammaKind::R => {
                let r = a.rem_euclid(2);
                let k = a.div_euclid(2);
                // Γ_R(s+r+2k) = ∏_{t<k} (s+r+2t)/(2π) · Γ_R(s+r)
                if k > 0 {
                    for t in 0..k {
                        pre.mul_step(r + 2 * t, *m);
                    }
                } else {
                    for t in k..0 {
                        pre.mul_step(r + 2 * t, -*m);
                    }
                }
                if r == 0 {
                    e0 += m;
                } else {
                    e1 += m;
                }
            }
            GammaKind::C => {
                if *a > 0 {
                    for t in 0..*a {
                        pre.mul_step(t, *m);
                    }
                } else {
                    for t in *a..0 {
                        pre.mul_step(t, -*m);
                    }
                }
                e0 += m;
                e1 += m;
            }
        }
    }
    let k = if e0.signum() == e1.signum() {
        e0.signum() * e0.abs().min(e1.abs())
    } else {
        0
    };
    pre.fold_twos();
    let mut out = GammaProduct {
        factors: BTreeMap::new(),
        prefactor: pre,
    };
    out.push(GammaKind::R, 0, e0 - k);
    out.push(GammaKind::R, 1, e1 - k);
    out.push(GammaKind::C, 0, k);
    out
}

/// `Γ(P¹(O_k), s) = Γ_k(s) Γ_k(s−1)`.
pub fn gamma_projective_line(r1: u32, r2: u32) -> GammaProduct {
    let mut g = GammaProduct::one();
    g.push(GammaKind::R, 0, r1 as i64);
    g.push(GammaKind::R, -1, r1 as i64);
    g.push(GammaKind::C, 0, r2 as i64);
    g.push(GammaKind::C, -1, r2 as i64);
    g
}

/// `Γ(H¹) = Γ_C(s)^{g(r1 + 2 r2)}`.
pub fn gamma_h1(g: u32, r1: u32, r2: u32) -> GammaProduct {
    GammaProduct::factor(GammaKind::C, 0, g as i64 * (r1 as i64 + 2 * r2 as i64))
}

/// `Γ(S, s) = Γ_k(s)Γ_k(s−1) / Γ(H¹)` in normal form.
pub fn gamma_surface(g: u32, r1: u32, r2: u32) -> GammaProduct {
    normal_form(&gamma_projective_line(r1, r2).div(&gamma_h1(g, r1, r2)))
}

/// `Q(s) = c·(s−1)^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFactor {
    pub c: ExactConst,
    pub m: i64,
}

impl QFactor {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        (s - 1.0).powi(self.m as i32) * self.c.to_f64()
    }
}

/// `Q(s) = normal_form(Γ(P¹)^{1−g} / Γ(S,s))`, required to be Γ-free.
pub fn compute_q(g: u32, r1: u32, r2: u32) -> Result<QFactor> {
    let p1 = gamma_projective_line(r1, r2);
    let raw = p1
        .pow(1 - g as i64)
        .div(&gamma_projective_line(r1, r2).div(&gamma_h1(g, r1, r2)));
    let nf = normal_form(&raw);
    if !nf.is_gamma_free() {
        return Err(Error::NotGammaFree(format!("{nf}")));
    }
    let lin = &nf.prefactor.linear;
    if lin.keys().any(|k| *k != -1) {
        return Err(Error::NotGammaFree(format!(
            "linear factors other than (s-1) remain: {nf}"
        )));
    }
    Ok(QFactor {
        c: nf.prefactor.constant(),
        m: lin.get(&-1).copied().unwrap_or(0),
    })
}

/// Sign `ε` with `Q(2−s) = ε Q(s)`.
pub fn check_q_symmetry(q: &QFactor) -> i64 {
    if q.m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The three exponent readings reported side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QExponents {
    /// `(r1 + r2)(g − 1)`.
    pub display: i64,
    /// Exponent of the reciprocal `D/(1−s)^m` form, `−g(r1 + r2)`.
    pub reciprocal: i64,
    /// `g(r1 + r2)`, from the normal form.
    pub derived: i64,
}

pub fn q_exponents(g: u32, r1: u32, r2: u32) -> QExponents {
    let g = g as i64;
    let r = r1 as i64 + r2 as i64;
    QExponents {
        display: r * (g - 1),
        reciprocal: -g * r,
        derived: g * r,
    }
}

/// Numeric value, refusing arguments within `1e−8` of a pole.
pub fn eval_gamma(g: &GammaProduct, s: Complex64) -> Result<Complex64> {
    let mut log = Complex64::zero();
    for ((kind, a), m) in &g.factors {
        let z = s + *a as f64;
        let (arg, lg) = match kind {
            GammaKind::R => (z / 2.0, ln_gamma_r(z)),
            GammaKind::C => (z, ln_gamma_c(z)),
        };
        if gamma_pole_distance(arg) < POLE_EPS {
            return Err(Error::Pole(format!("Gamma_{kind:?}(s{a:+}) at s = {s}")));
        }
        log += lg * *m as f64;
    }
    Ok(log.exp() * g.prefactor.eval(s)?)
}

/// Random points in `0.5 ≤ Re s ≤ 4`, `|Im s| ≤ 10`.
pub fn sample_points(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(0.5..4.0), rng.gen_range(-10.0..10.0)))
        .collect()
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.prefactor.constant().to_string()];
        for (k, m) in &self.prefactor.linear {
            parts.push(format!("(s{k:+})^{m}"));
        }
        for ((kind, a), m) in &self.factors {
            let name = match kind {
                GammaKind::R => "Γ_R",
                GammaKind::C => "Γ_C",
            };
            let arg = if *a == 0 { "s".to_string() } else { format!("s{a:+}") };
            parts.push(format!("{name}({arg})^{m}"));
        }
        write!(f, "{}", parts.join(" · "))
    }
}

impl Prefactor {
    pub fn is_unit(&self) -> bool {
        self.c.is_one() && self.pi_exp == 0 && self.two_exp == 0 && self.linear.is_empty()
    }

    pub fn sign_positive(&self) -> bool {
        self.c.is_positive()
    }
}
