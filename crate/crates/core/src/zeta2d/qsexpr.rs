use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::exact::{rat_pow, rint, Rat};

/// Symbolic function of `s`: a rational prefactor times
/// `p^{a s + b}` monomials (prime bases, `0 ≤ b < 1`),
/// `(1 − q^{−s+a})^k` Euler atoms, `P(q^{−s})^k` numerator atoms,
/// and a formal `X^{a s + b}·(1 − X^s)^k` part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QsExpr {
    prefactor: Rat,
    powers: BTreeMap<u64, (Rat, Rat)>,
    euler: BTreeMap<(u64, Rat), i64>,
    polys: BTreeMap<(u64, Vec<i64>), i64>,
    x_mono: (Rat, Rat),
    x_euler: i64,
}

impl Default for QsExpr {
    fn default() -> Self {
        Self::one()
    }
}

fn floor_rat(r: &Rat) -> i64 {
    r.floor().to_integer().to_i64().expect("exponent out of range")
}

impl QsExpr {
    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        Self {
            prefactor: r,
            powers: BTreeMap::new(),
            euler: BTreeMap::new(),
            polys: BTreeMap::new(),
            x_mono: (Rat::zero(), Rat::zero()),
            x_euler: 0,
        }
    }

    /// `q^{a s + b}` for a prime power `q`.
    pub fn q_pow(q: u64, a: Rat, b: Rat) -> Result<Self> {
        let mut out = Self::one();
        out.mul_q_pow(q, a, b)?;
        Ok(out)
    }

    /// `q^{k(1−s)}`, the conductor and vertical weight shape.
    pub fn weight(q: u64, k: i64) -> Result<Self> {
        Self::q_pow(q, rint(-k), rint(k))
    }

    /// `(1 − q^{−s+a})^k`.
    pub fn euler(q: u64, a: Rat, k: i64) -> Result<Self> {
        prime_power(q).ok_or_else(|| Error::Validation(format!("{q} is not a prime power")))?;
        let mut out = Self::one();
        out.mul_euler(q, a, k);
        Ok(out)
    }

    /// `P(q^{−s})^k` for an integer polynomial with `P(0) = 1`.
    pub fn poly(q: u64, coeffs: &[i64], k: i64) -> Result<Self> {
        prime_power(q).ok_or_else(|| Error::Validation(format!("{q} is not a prime power")))?;
        if coeffs.first() != Some(&1) {
            return Err(Error::InvalidNumerator("P(0) must be 1".into()));
        }
        let mut c = coeffs.to_vec();
        while c.len() > 1 && c.last() == Some(&0) {
            c.pop();
        }
        let mut out = Self::one();
        if c.len() == 1 || k == 0 {
            return Ok(out);
        }
        if c.len() == 2 {
            if let Some(m) = exact_log(q, -c[1]) {
                out.mul_euler(q, rint(m), k);
                return Ok(out);
            }
        }
        out.mul_poly(q, c, k);
        Ok(out)
    }

    /// `X^{a s + b}`.
    pub fn x_pow(a: Rat, b: Rat) -> Self {
        let mut out = Self::one();
        out.x_mono = (a, b);
        out
    }

    /// `(1 − X^s)^k`.
    pub fn x_geometric(k: i64) -> Self {
        let mut out = Self::one();
        out.x_euler = k;
        out
    }

    fn mul_q_pow(&mut self, q: u64, a: Rat, b: Rat) -> Result<()> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::Validation(format!("{q} is not a prime power")))?;
        let k = rint(k as i64);
        let slot = self
            .powers
            .entry(p)
            .or_insert_with(|| (Rat::zero(), Rat::zero()));
        slot.0 += &a * &k;
        slot.1 += &b * &k;
        let whole = floor_rat(&slot.1);
        if whole != 0 {
            slot.1 -= rint(whole);
            self.prefactor *= rat_pow(&rint(p as i64), whole);
        }
        if slot.0.is_zero() && slot.1.is_zero() {
            self.powers.remove(&p);
        }
        Ok(())
    }

    fn mul_euler(&mut self, q: u64, a: Rat, k: i64) {
        let key = (q, a);
        let e = self.euler.entry(key.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.euler.remove(&key);
        }
    }

    fn mul_poly(&mut self, q: u64, c: Vec<i64>, k: i64) {
        let key = (q, c);
        let e = self.polys.entry(key.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.polys.remove(&key);
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let kr = rint(k);
        let mut out = Self::constant(rat_pow(&self.prefactor, k));
        for (p, (a, b)) in &self.powers {
            out.mul_q_pow(*p, a * &kr, b * &kr).expect("prime base");
        }
        for ((q, a), e) in &self.euler {
            out.mul_euler(*q, a.clone(), e * k);
        }
        for ((q, c), e) in &self.polys {
            out.mul_poly(*q, c.clone(), e * k);
        }
        out.x_mono = (&self.x_mono.0 * &kr, &self.x_mono.1 * &kr);
        out.x_euler = self.x_euler * k;
        out
    }

    pub fn prefactor(&self) -> &Rat {
        &self.prefactor
    }

    /// Exponent `(a, b)` of the prime `p` in `p^{a s + b}`, if present.
    pub fn power_of(&self, p: u64) -> Option<&(Rat, Rat)> {
        self.powers.get(&p)
    }

    pub fn powers(&self) -> impl Iterator<Item = (u64, &Rat, &Rat)> {
        self.powers.iter().map(|(p, (a, b))| (*p, a, b))
    }

    pub fn euler_atoms(&self) -> impl Iterator<Item = (u64, &Rat, i64)> {
        self.euler.iter().map(|((q, a), k)| (*q, a, *k))
    }

    pub fn poly_atoms(&self) -> impl Iterator<Item = (u64, &[i64], i64)> {
        self.polys.iter().map(|((q, c), k)| (*q, c.as_slice(), *k))
    }

    pub fn x_monomial(&self) -> (&Rat, &Rat) {
        (&self.x_mono.0, &self.x_mono.1)
    }

    pub fn has_x(&self) -> bool {
        !self.x_mono.0.is_zero() || !self.x_mono.1.is_zero() || self.x_euler != 0
    }

    /// Numeric value with the formal variable specialized to `X = 1`.
    /// The `(1 − X^s)` part has no value at `X = 1`.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        if self.x_euler != 0 {
            return Err(Error::Domain("(1 - X^s) factor needs an explicit X".into()));
        }
        self.eval_with_x(s, Complex64::new(1.0, 0.0))
    }

    pub fn eval_with_x(&self, s: Complex64, x: Complex64) -> Result<Complex64> {
        let mut v = Complex64::new(self.prefactor.to_f64().unwrap_or(f64::NAN), 0.0);
        for (p, (a, b)) in &self.powers {
            let e = s * a.to_f64().unwrap() + b.to_f64().unwrap();
            v *= (e * (*p as f64).ln()).exp();
        }
        for ((q, a), k) in &self.euler {
            let t = ((a.to_f64().unwrap() - s) * (*q as f64).ln()).exp();
            v *= pow_checked(Complex64::new(1.0, 0.0) - t, *k)?;
        }
        for ((q, c), k) in &self.polys {
            let t = (-s * (*q as f64).ln()).exp();
            let mut acc = Complex64::new(0.0, 0.0);
            for coef in c.iter().rev() {
                acc = acc * t + *coef as f64;
            }
            v *= pow_checked(acc, *k)?;
        }
        if self.has_x() {
            let lx = x.ln();
            let e = s * self.x_mono.0.to_f64().unwrap() + self.x_mono.1.to_f64().unwrap();
            v *= (e * lx).exp();
            if self.x_euler != 0 {
                v *= pow_checked(Complex64::new(1.0, 0.0) - (s * lx).exp(), self.x_euler)?;
            }
        }
        Ok(v)
    }

    /// Exact value at a rational `s` when every power is rational there.
    pub fn eval_exact(&self, s: &Rat) -> Result<Option<Rat>> {
        if self.has_x() {
            return Ok(None);
        }
        let mut v = self.prefactor.clone();
        for (p, (a, b)) in &self.powers {
            match int_exp(&(a * s + b)) {
                Some(e) => v *= rat_pow(&rint(*p as i64), e),
                None => return Ok(None),
            }
        }
        for ((q, a), k) in &self.euler {
            let Some(e) = int_exp(&(a - s)) else {
                return Ok(None);
            };
            let base = Rat::one() - rat_pow(&rint(*q as i64), e);
            v *= rat_pow_checked(&base, *k)?;
        }
        for ((q, c), k) in &self.polys {
            let Some(e) = int_exp(&(-s)) else {
                return Ok(None);
            };
            let t = rat_pow(&rint(*q as i64), e);
            let mut acc = Rat::zero();
            for coef in c.iter().rev() {
                acc = acc * &t + rint(*coef);
            }
            v *= rat_pow_checked(&acc, *k)?;
        }
        Ok(Some(v))
    }
}

fn int_exp(r: &Rat) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

fn pow_checked(z: Complex64, k: i64) -> Result<Complex64> {
    if k < 0 && z.norm() < 1e-300 {
        return Err(Error::Pole("Euler factor vanishes".into()));
    }
    Ok(z.powi(k as i32))
}

fn rat_pow_checked(r: &Rat, k: i64) -> Result<Rat> {
    if k < 0 && r.is_zero() {
        return Err(Error::Pole("Euler factor vanishes".into()));
    }
    Ok(rat_pow(r, k))
}

/// `m ≥ 0` with `q^m = v`.
fn exact_log(q: u64, v: i64) -> Option<i64> {
    if v < 1 {
        return None;
    }
    let (mut acc, mut m) = (1i64, 0i64);
    while acc < v {
        acc = acc.checked_mul(q as i64)?;
        m += 1;
    }
    (acc == v).then_some(m)
}

impl Mul for &QsExpr {
    type Output = QsExpr;
    fn mul(self, rhs: &QsExpr) -> QsExpr {
        let mut out = self.clone();
        out.prefactor *= &rhs.prefactor;
        for (p, (a, b)) in &rhs.powers {
            out.mul_q_pow(*p, a.clone(), b.clone()).expect("prime base");
        }
        for ((q, a), k) in &rhs.euler {
            out.mul_euler(*q, a.clone(), *k);
        }
        for ((q, c), k) in &rhs.polys {
            out.mul_poly(*q, c.clone(), *k);
        }
        out.x_mono = (&out.x_mono.0 + &rhs.x_mono.0, &out.x_mono.1 + &rhs.x_mono.1);
        out.x_euler += rhs.x_euler;
        out
    }
}

impl Mul for QsExpr {
    type Output = QsExpr;
    fn mul(self, rhs: QsExpr) -> QsExpr {
        &self * &rhs
    }
}

impl std::iter::Product for QsExpr {
    fn product<I: Iterator<Item = QsExpr>>(iter: I) -> QsExpr {
        iter.fold(QsExpr::one(), |acc, x| &acc * &x)
    }
}

fn lin(a: &Rat, b: &Rat, var: &str) -> String {
    let mut s = String::new();
    if !a.is_zero() {
        if a.is_one() {
            s.push_str(var);
        } else if (-a).is_one() {
            s.push('-');
            s.push_str(var);
        } else {
            s.push_str(&format!("{a}*{var}"));
        }
    }
    if !b.is_zero() {
        if s.is_empty() {
            s = b.to_string();
        } else if b.is_negative() {
            s.push_str(&format!("-{}", b.abs()));
        } else {
            s.push_str(&format!("+{b}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for QsExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.prefactor.to_string()];
        for (p, (a, b)) in &self.powers {
            parts.push(format!("{p}^({})", lin(a, b, "s")));
        }
        for ((q, a), k) in &self.euler {
            parts.push(format!("(1-{q}^({}))^{k}", lin(&-Rat::one(), a, "s")));
        }
        for ((q, c), k) in &self.polys {
            let cs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            parts.push(format!("P[{}]({q}^-s)^{k}", cs.join(",")));
        }
        if !self.x_mono.0.is_zero() || !self.x_mono.1.is_zero() {
            parts.push(format!("X^({})", lin(&self.x_mono.0, &self.x_mono.1, "s")));
        }
        if self.x_euler != 0 {
            parts.push(format!("(1-X^s)^{}", self.x_euler));
        }
        write!(f, "{}", parts.join(" * "))
    }
}
