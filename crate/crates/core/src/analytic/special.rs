//! Complex special functions: log-gamma, Hurwitz zeta, upper incomplete gamma.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rint;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance below which an argument counts as sitting on a pole.
pub const POLE_EPS: f64 = 1e-8;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `ln Γ(z)` on a branch suitable for exponentiation.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        return c(PI.ln()) - s.ln() - ln_gamma(c(1.0) - z);
    }
    let z = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (k, coef) in LANCZOS.iter().enumerate().skip(1) {
        x += *coef / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    c(0.5 * (2.0 * PI).ln()) + (z + 0.5) * t.ln() - t + x.ln()
}

/// Distance from `z` to the nearest pole of Γ.
pub fn gamma_pole_distance(z: Complex64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let n = z.re.round().min(0.0);
    (z - n).norm()
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    if gamma_pole_distance(z) < POLE_EPS {
        return Err(Error::Pole(format!("Gamma at {z}")));
    }
    Ok(ln_gamma(z).exp())
}

/// `Γ_R(s) = π^{−s/2} Γ(s/2)`.
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    Ok((-s / 2.0 * PI.ln()).exp() * gamma(s / 2.0)?)
}

/// `Γ_C(s) = 2 (2π)^{−s} Γ(s)`, so that `Γ_R(s) Γ_R(s+1) = Γ_C(s)`.
pub fn gamma_c(s: Complex64) -> Result<Complex64> {
    Ok((-s * (2.0 * PI).ln()).exp() * gamma(s)? * 2.0)
}

pub(crate) fn ln_gamma_r(s: Complex64) -> Complex64 {
    -s / 2.0 * PI.ln() + ln_gamma(s / 2.0)
}

pub(crate) fn ln_gamma_c(s: Complex64) -> Complex64 {
    c(2f64.ln()) - s * (2.0 * PI).ln() + ln_gamma(s)
}

/// `B_{2k}/(2k)!` for `k = 1..=40`.
fn bernoulli_scaled() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 81usize;
        let mut b: Vec<BigRational> = vec![BigRational::zero(); n];
        b[0] = BigRational::one();
        for m in 1..n {
            let mut acc = BigRational::zero();
            let mut binom = BigRational::one();
            for (k, bk) in b.iter().enumerate().take(m) {
                acc += &binom * bk;
                binom = binom * rint((m + 1 - k) as i64) / rint((k + 1) as i64);
            }
            b[m] = -acc / rint((m + 1) as i64);
        }
        let mut fact = BigRational::one();
        let mut out = Vec::new();
        for (m, bm) in b.iter().enumerate().skip(1) {
            fact *= rint(m as i64);
            if m % 2 == 0 {
                out.push((bm / &fact).to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^{−s}` for `0 < a ≤ 1` by
/// Euler–Maclaurin summation; accurate for `Re(s) ≥ −2`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if (s - 1.0).norm() < POLE_EPS {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    Ok(euler_maclaurin(s, a, false))
}

/// `ζ(s, a) − 1/(s−1)`, entire in `s`.
pub fn hurwitz_zeta_regular(s: Complex64, a: f64) -> Complex64 {
    euler_maclaurin(s, a, true)
}

fn euler_maclaurin(s: Complex64, a: f64, regular: bool) -> Complex64 {
    let n = 20 + s.norm().ceil() as usize;
    let mut sum = Complex64::zero();
    for k in 0..n {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let na = n as f64 + a;
    let lna = na.ln();
    let pow = (-s * lna).exp();
    // ∫_N^∞ (x+a)^{−s} dx = (N+a)^{1−s}/(s−1)
    sum += if regular {
        // ((N+a)^{1−s} − 1)/(s−1) = −L·(e^z − 1)/z with z = (1−s)L
        let z = (1.0 - s) * lna;
        -lna * exprel(z)
    } else {
        pow * na / (s - 1.0)
    };
    sum += pow * 0.5;
    let bern = bernoulli_scaled();
    let mut rising = s;
    let mut npow = pow / na;
    for (k, b) in bern.iter().enumerate() {
        let term = rising * npow * *b;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        let m = (2 * k) as f64;
        rising = rising * (s + m + 1.0) * (s + m + 2.0);
        npow /= na * na;
    }
    sum
}

/// `(e^z − 1)/z`.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() > 1e-3 {
        return (z.exp() - 1.0) / z;
    }
    let mut term = c(1.0);
    let mut acc = c(1.0);
    for k in 2..10 {
        term = term * z / k as f64;
        acc += term;
    }
    acc
}

/// Riemann zeta for `Re(s) ≥ −2`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// Upper incomplete gamma `Γ(a, x)` for real `x > 0` by Lentz's continued fraction.
pub fn upper_gamma(a: Complex64, x: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(x + 1.0, 0.0) - a;
    let mut cc = Complex64::new(1.0 / TINY, 0.0);
    let mut d = c(1.0) / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(c(i as f64) * (c(i as f64) - a));
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = c(TINY);
        }
        cc = b + an / cc;
        if cc.norm() < TINY {
            cc = c(TINY);
        }
        d = c(1.0) / d;
        let del = d * cc;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (a * x.ln() - x).exp() * h
}
