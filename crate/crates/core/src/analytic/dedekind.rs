//! Completed Dedekind zeta functions of `Q` and quadratic fields.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::special::{gamma_c, gamma_r, hurwitz_zeta_regular, zeta, POLE_EPS};
use crate::arith::{is_fundamental_discriminant, kronecker};
use crate::error::{Error, Result};

/// Which builtin evaluator computes `ξ(k, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DedekindTag {
    Rational,
    /// `Q(√D)` for a fundamental discriminant `D`.
    Quadratic(i64),
}

impl DedekindTag {
    pub fn validate(&self) -> Result<()> {
        match self {
            DedekindTag::Rational => Ok(()),
            DedekindTag::Quadratic(d) if is_fundamental_discriminant(*d) => Ok(()),
            DedekindTag::Quadratic(d) => Err(Error::Validation(format!(
                "{d} is not a fundamental discriminant"
            ))),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            DedekindTag::Rational => 1,
            DedekindTag::Quadratic(_) => 2,
        }
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (u32, u32) {
        match self {
            DedekindTag::Rational => (1, 0),
            DedekindTag::Quadratic(d) if *d > 0 => (2, 0),
            DedekindTag::Quadratic(_) => (0, 1),
        }
    }

    pub fn abs_disc(&self) -> u64 {
        match self {
            DedekindTag::Rational => 1,
            DedekindTag::Quadratic(d) => d.unsigned_abs(),
        }
    }
}

/// `L(s, χ_D) = |D|^{−s} Σ_a χ_D(a) ζ(s, a/|D|)` for a nontrivial character.
pub fn dirichlet_l(d: i64, s: Complex64) -> Result<Complex64> {
    let n = d.unsigned_abs();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..n {
        let chi = kronecker(d, a);
        if chi == 0 {
            continue;
        }
        // Σ χ(a) = 0, so the poles of the Hurwitz terms cancel.
        acc += hurwitz_zeta_regular(s, a as f64 / n as f64) * chi as f64;
    }
    Ok(acc * (-s * (n as f64).ln()).exp())
}

/// `ζ_k(s)` for `Re(s) ≥ 1/2`, where the Hurwitz sums are accurate.
pub fn dedekind_zeta(tag: DedekindTag, s: Complex64) -> Result<Complex64> {
    match tag {
        DedekindTag::Rational => zeta(s),
        DedekindTag::Quadratic(d) => Ok(zeta(s)? * dirichlet_l(d, s)?),
    }
}

fn gamma_infinity(tag: DedekindTag, s: Complex64) -> Result<Complex64> {
    let (r1, r2) = tag.signature();
    Ok(gamma_r(s)?.powi(r1 as i32) * gamma_c(s)?.powi(r2 as i32))
}

/// `ξ(k, s) = |d_k|^{s/2} Γ_R(s)^{r1} Γ_C(s)^{r2} ζ_k(s)`, continued by `ξ(s) = ξ(1−s)`.
pub fn dedekind_xi(tag: DedekindTag, s: Complex64) -> Result<Complex64> {
    tag.validate()?;
    for pole in [0.0, 1.0] {
        if (s - pole).norm() < POLE_EPS {
            return Err(Error::Pole(format!("xi at s = {pole}")));
        }
    }
    let s = if s.re < 0.5 { 1.0 - s } else { s };
    let disc = (s / 2.0 * (tag.abs_disc() as f64).ln()).exp();
    Ok(disc * gamma_infinity(tag, s)? * dedekind_zeta(tag, s)?)
}

/// A completed zeta function with its poles and residues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletedZeta {
    pub tag: DedekindTag,
}

impl CompletedZeta {
    pub fn new(tag: DedekindTag) -> Result<Self> {
        tag.validate()?;
        Ok(Self { tag })
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        dedekind_xi(self.tag, s)
    }

    /// `[(0, −ρ), (1, ρ)]` with `ρ = |d|^{1/2} Γ_∞(1) L(1, χ)`.
    pub fn poles(&self) -> Result<Vec<(f64, f64)>> {
        let one = Complex64::new(1.0, 0.0);
        let rho = match self.tag {
            DedekindTag::Rational => 1.0,
            DedekindTag::Quadratic(d) => {
                let l1 = dirichlet_l(d, one)?;
                (self.tag.abs_disc() as f64).sqrt() * gamma_infinity(self.tag, one)?.re * l1.re
            }
        };
        Ok(vec![(0.0, -rho), (1.0, rho)])
    }
}
