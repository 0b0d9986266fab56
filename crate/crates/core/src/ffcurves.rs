//! Curves over finite fields through their zeta numerators: point counts,
//! closed points, Euler products, the Weil functional equation, Riemann–Roch
//! dimensions and the residue-level summation formula.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, mobius, prime_power};
use crate::error::{Error, Result};
use crate::exact::{rint, LaurentValue, QHalfCoeff, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CurveFamily {
    ProjectiveLine,
    Elliptic,
    #[default]
    Generic,
}

/// A smooth projective curve over `F_q` given by its zeta numerator
/// `P(t) = 1 + c₁t + … + c_{2g}t^{2g}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveFF {
    pub q: u64,
    pub genus: u32,
    pub numerator: Vec<i64>,
    #[serde(default)]
    pub family: CurveFamily,
}

/// A divisor class described by its degree; `principal` matters only for
/// degree 0 on an elliptic curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorFF {
    pub degree: i64,
    #[serde(default)]
    pub principal: bool,
}

impl DivisorFF {
    pub fn new(degree: i64) -> Self {
        Self {
            degree,
            principal: degree == 0,
        }
    }

    pub fn non_principal(degree: i64) -> Self {
        Self {
            degree,
            principal: false,
        }
    }
}

impl CurveFF {
    /// Checks shape only: prime power `q`, `deg P = 2g`, `P(0) = 1`.
    pub fn new(q: u64, genus: u32, numerator: Vec<i64>, family: CurveFamily) -> Result<Self> {
        let c = Self {
            q,
            genus,
            numerator,
            family,
        };
        c.check_shape()?;
        Ok(c)
    }

    pub fn projective_line(q: u64) -> Result<Self> {
        Self::new(q, 0, vec![1], CurveFamily::ProjectiveLine)
    }

    /// Elliptic curve with `N₁ = q + 1 − a`.
    pub fn elliptic(q: u64, trace: i64) -> Result<Self> {
        Self::new(q, 1, vec![1, -trace, q as i64], CurveFamily::Elliptic)
    }

    pub fn check_shape(&self) -> Result<()> {
        if prime_power(self.q).is_none() {
            return Err(Error::InvalidNumerator(format!("q = {} is not a prime power", self.q)));
        }
        if self.numerator.len() != 2 * self.genus as usize + 1 {
            return Err(Error::InvalidNumerator(format!(
                "numerator of a genus {} curve needs {} coefficients, got {}",
                self.genus,
                2 * self.genus + 1,
                self.numerator.len()
            )));
        }
        if self.numerator[0] != 1 {
            return Err(Error::InvalidNumerator("P(0) must be 1".into()));
        }
        match self.family {
            CurveFamily::ProjectiveLine if self.genus != 0 => Err(Error::InvalidNumerator(
                "projective line must have genus 0".into(),
            )),
            CurveFamily::Elliptic if self.genus != 1 => Err(Error::InvalidNumerator(
                "elliptic curve must have genus 1".into(),
            )),
            _ => Ok(()),
        }
    }

    /// `P(t) = q^g t^{2g} P(1/(qt))`, i.e. `c_{2g−k} = q^{g−k} c_k`, checked exactly.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus as i64;
        let q = rint(self.q as i64);
        let c = &self.numerator;
        let n = c.len() as i64;
        if n != 2 * g + 1 {
            return false;
        }
        (0..n).all(|k| {
            let lhs = rint(c[(2 * g - k) as usize]);
            let rhs = crate::exact::rat_pow(&q, g - k) * rint(c[k as usize]);
            lhs == rhs
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        if !self.functional_equation_holds() {
            return Err(Error::InvalidNumerator(
                "numerator violates the functional equation".into(),
            ));
        }
        Ok(())
    }
}

/// Power sums `Σ α_i^n` of the inverse roots of `P`, by Newton's identities.
fn power_sums(c: &[i64], nmax: usize) -> Result<Vec<i128>> {
    let coeff = |k: usize| -> i128 { c.get(k).copied().unwrap_or(0) as i128 };
    let mut p = vec![0i128; nmax + 1];
    for n in 1..=nmax {
        let mut v = -(n as i128)
            .checked_mul(coeff(n))
            .ok_or(Error::Overflow("power sums"))?;
        for k in 1..n {
            let t = coeff(k)
                .checked_mul(p[n - k])
                .ok_or(Error::Overflow("power sums"))?;
            v = v.checked_sub(t).ok_or(Error::Overflow("power sums"))?;
        }
        p[n] = v;
    }
    Ok(p)
}

/// `N_n = q^n + 1 − Σ α_i^n` for `n = 1..=nmax`.
pub fn point_counts(c: &CurveFF, nmax: usize) -> Result<Vec<i128>> {
    c.validate()?;
    if nmax == 0 {
        return Err(Error::Validation("nmax must be at least 1".into()));
    }
    let p = power_sums(&c.numerator, nmax)?;
    let q = c.q as i128;
    let mut out = Vec::with_capacity(nmax);
    let mut qn: i128 = 1;
    for pn in p.iter().skip(1) {
        qn = qn.checked_mul(q).ok_or(Error::Overflow("point counts"))?;
        out.push(qn + 1 - pn);
    }
    Ok(out)
}

/// Number of closed points of each degree `n = 1..=nmax`, by Möbius inversion.
pub fn closed_point_counts(c: &CurveFF, nmax: usize) -> Result<Vec<i128>> {
    let counts = point_counts(c, nmax)?;
    closed_from_points(&counts)
}

pub(crate) fn closed_from_points(counts: &[i128]) -> Result<Vec<i128>> {
    let mut out = Vec::with_capacity(counts.len());
    for n in 1..=counts.len() {
        let s: i128 = divisors(n as u64)
            .into_iter()
            .map(|d| mobius(n as u64 / d) as i128 * counts[d as usize - 1])
            .sum();
        if s < 0 || s % n as i128 != 0 {
            return Err(Error::ClosedPoints {
                n,
                value: format!("{}/{}", s, n),
            });
        }
        out.push(s / n as i128);
    }
    Ok(out)
}

/// `Z(t) = P(t)/((1−t)(1−qt))` together with the functional-equation certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaClosedForm {
    pub q: u64,
    pub numerator: Vec<i64>,
    /// Denominator coefficients `(1−t)(1−qt)`.
    pub denominator: [i64; 3],
    pub functional_equation: bool,
}

impl ZetaClosedForm {
    pub fn eval(&self, t: Complex64) -> Result<Complex64> {
        let mut num = Complex64::zero();
        for c in self.numerator.iter().rev() {
            num = num * t + *c as f64;
        }
        let den = (Complex64::one() - t) * (Complex64::one() - t * self.q as f64);
        if den.norm() == 0.0 {
            return Err(Error::Pole(format!("t = {t}")));
        }
        Ok(num / den)
    }

    pub fn eval_at_s(&self, s: Complex64) -> Result<Complex64> {
        self.eval((-s * (self.q as f64).ln()).exp())
    }

    /// Exact value at rational `t`.
    pub fn eval_rat(&self, t: &Rat) -> Result<Rat> {
        let mut num = Rat::zero();
        for c in self.numerator.iter().rev() {
            num = num * t + rint(*c);
        }
        let den = (Rat::one() - t) * (Rat::one() - t * rint(self.q as i64));
        if den.is_zero() {
            return Err(Error::Pole(format!("t = {t}")));
        }
        Ok(num / den)
    }
}

pub fn zeta_closed_form(c: &CurveFF) -> ZetaClosedForm {
    ZetaClosedForm {
        q: c.q,
        numerator: c.numerator.clone(),
        denominator: [1, -(c.q as i64 + 1), c.q as i64],
        functional_equation: c.functional_equation_holds(),
    }
}

/// `∏_{n ≤ deg_max} (1 − q^{−ns})^{−a_n}`.
pub fn euler_truncated(c: &CurveFF, s: Complex64, deg_max: usize) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Euler product diverges for Re(s) = {} <= 1",
            s.re
        )));
    }
    if deg_max == 0 {
        return Err(Error::Validation("deg_max must be at least 1".into()));
    }
    let a = closed_point_counts(c, deg_max)?;
    let lq = (c.q as f64).ln();
    let mut log_acc = Complex64::zero();
    for (k, an) in a.iter().enumerate() {
        if *an == 0 {
            continue;
        }
        let n = (k + 1) as f64;
        let t = (-s * n * lq).exp();
        log_acc += neg_ln_1m(t) * (*an as f64);
    }
    Ok(log_acc.exp())
}

/// `−ln(1 − t)`, by its series when `1 − t` would round to 1.
fn neg_ln_1m(t: Complex64) -> Complex64 {
    if t.norm() > 1e-4 {
        return -(Complex64::one() - t).ln();
    }
    let mut acc = Complex64::zero();
    let mut pow = t;
    for k in 1..=5 {
        acc += pow / k as f64;
        pow *= t;
    }
    acc
}

/// `ℓ(D)` for the projective line and elliptic curves.
pub fn rr_dim(c: &CurveFF, d: &DivisorFF) -> Result<i64> {
    match c.family {
        CurveFamily::ProjectiveLine => Ok((d.degree + 1).max(0)),
        CurveFamily::Elliptic => Ok(match d.degree {
            n if n >= 1 => n,
            0 => i64::from(d.principal),
            _ => 0,
        }),
        CurveFamily::Generic => Err(Error::Unsupported(
            "Riemann-Roch dimensions need the projective_line or elliptic family".into(),
        )),
    }
}

/// Canonical class: degree `2g − 2`; on an elliptic curve it is 0.
pub fn canonical_divisor(c: &CurveFF) -> DivisorFF {
    DivisorFF {
        degree: 2 * c.genus as i64 - 2,
        principal: c.genus == 1,
    }
}

/// Both sides of the residue-level summation formula for
/// `f = char(t^i · lift(L(D)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummationReport {
    pub degree: i64,
    pub shift: i64,
    pub lhs: LaurentValue,
    pub rhs: LaurentValue,
    pub equal: bool,
}

pub fn summation_check(c: &CurveFF, d: &DivisorFF, i: i64) -> Result<SummationReport> {
    let g = c.genus as i64;
    let k = canonical_divisor(c);
    let kd = DivisorFF {
        degree: k.degree - d.degree,
        principal: d.principal,
    };
    let l_d = rr_dim(c, d)?;
    let l_kd = rr_dim(c, &kd)?;
    let qpow = |e: i64| LaurentValue::constant(QHalfCoeff::q_half_pow(2 * e).specialize(c.q));
    let shift = LaurentValue::x_pow(i);
    let lhs = &shift * &qpow(l_d);
    let rhs = &(&shift * &qpow(d.degree + 1 - g)) * &qpow(l_kd);
    Ok(SummationReport {
        degree: d.degree,
        shift: i,
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}
