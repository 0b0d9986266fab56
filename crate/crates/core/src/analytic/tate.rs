//! Tate's decomposition of `ξ(Q, s)` for the Gaussian test function:
//! `ξ(s) = η(s) + η(1−s) + ω(s)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::dedekind::{dedekind_xi, DedekindTag};
use super::special::{upper_gamma, POLE_EPS};
use crate::error::{Error, Result};

/// `η(s) = ∫_1^∞ Σ_{n≥1} e^{−πn²x} x^{s/2} dx/x = Σ (πn²)^{−s/2} Γ(s/2, πn²)`; entire.
pub fn eta(s: Complex64) -> Complex64 {
    let a = s / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..200u32 {
        let x = PI * (n as f64).powi(2);
        let term = (-a * x.ln()).exp() * upper_gamma(a, x);
        acc += term;
        if term.norm() <= 1e-18 * acc.norm() {
            break;
        }
    }
    acc
}

/// `ω(s) = ∫_0^1 h_f(x) x^s dx/x = −1/s − 1/(1−s)`.
pub fn omega(s: Complex64) -> Result<Complex64> {
    if s.norm() < POLE_EPS || (s - 1.0).norm() < POLE_EPS {
        return Err(Error::Pole(format!("omega at s = {s}")));
    }
    Ok(-1.0 / s - 1.0 / (1.0 - s))
}

/// `h_f(x) = −(f(0) − x^{−1} f̂(0)) = x^{−1} − 1` for `f = e^{−πx²}`.
pub fn boundary_gaussian(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain("x must be positive".into()));
    }
    Ok(1.0 / x - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TateDecomposition {
    pub eta_s: Complex64,
    pub eta_reflected: Complex64,
    pub omega: Complex64,
    pub sum: Complex64,
    pub xi: Complex64,
    pub residual: f64,
}

pub fn tate_decompose(s: Complex64) -> Result<TateDecomposition> {
    let omega = omega(s)?;
    let eta_s = eta(s);
    let eta_reflected = eta(1.0 - s);
    let sum = eta_s + eta_reflected + omega;
    let xi = dedekind_xi(DedekindTag::Rational, s)?;
    Ok(TateDecomposition {
        eta_s,
        eta_reflected,
        omega,
        sum,
        xi,
        residual: (sum - xi).norm(),
    })
}
