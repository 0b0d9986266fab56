//! Inverse Mellin transforms along vertical lines, the forward transform used
//! for round trips, and the boundary functions `h`, `𝔥` built from them.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A function of `s` that can be sampled on a contour.
pub type ZFn<'a> = dyn Fn(Complex64) -> Result<Complex64> + Sync + 'a;

pub const PANEL_WIDTH: f64 = 0.5;
pub const DEFAULT_NODES: usize = 20;
pub const DEFAULT_C: f64 = 3.0;
/// Truncation stops once `|Z(c+iT)| < DECAY · |Z(c)|`.
pub const DECAY: f64 = 1e-12;
const T_START: f64 = 4.0;
const T_CAP: f64 = 400.0;

/// Contour parameters; `t_max = None` selects `T` adaptively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourParams {
    pub c: f64,
    pub t_max: Option<f64>,
    pub nodes: usize,
}

impl Default for ContourParams {
    fn default() -> Self {
        Self {
            c: DEFAULT_C,
            t_max: None,
            nodes: DEFAULT_NODES,
        }
    }
}

/// Cached samples `(t, weight, Z(c+it))` of a panel Gauss–Legendre rule on `[−T, T]`.
#[derive(Debug, Clone)]
struct Samples {
    points: Vec<(f64, f64, Complex64)>,
}

impl Samples {
    fn build(z: &ZFn<'_>, c: f64, t_max: f64, nodes: usize) -> Result<Self> {
        let rule = GaussLegendre::new(
            NonZeroUsize::new(nodes).ok_or_else(|| Error::Validation("nodes must be positive".into()))?,
        );
        let panels = (2.0 * t_max / PANEL_WIDTH).round().max(1.0) as usize;
        let width = 2.0 * t_max / panels as f64;
        let mut grid = Vec::with_capacity(panels * nodes);
        for k in 0..panels {
            let a = -t_max + k as f64 * width;
            for (x, w) in rule.as_node_weight_pairs() {
                grid.push((a + 0.5 * width * (x + 1.0), 0.5 * width * w));
            }
        }
        let values: Vec<Result<Complex64>> = grid
            .par_iter()
            .map(|(t, _)| z(Complex64::new(c, *t)))
            .collect();
        let mut points = Vec::with_capacity(grid.len());
        for ((t, w), v) in grid.into_iter().zip(values) {
            points.push((t, w, v?));
        }
        Ok(Self { points })
    }

    /// `(1/2π) Σ w Z(c+it) x^{−c−it}`, real part.
    fn transform(&self, c: f64, x: f64) -> f64 {
        let lx = x.ln();
        let mut acc = 0.0;
        for (t, w, z) in &self.points {
            let phase = Complex64::new(0.0, -t * lx).exp();
            acc += w * (z * phase).re;
        }
        acc * (-c * lx).exp() / (2.0 * std::f64::consts::PI)
    }
}

/// A value together with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `f(x) = (1/2πi) ∫_{(c)} Z(s) x^{−s} ds` with cached contour samples.
///
/// The error estimate compares against a second rule with doubled `T` and
/// doubled node count.
#[derive(Debug, Clone)]
pub struct InverseMellin {
    pub c: f64,
    pub t_max: f64,
    pub nodes: usize,
    /// Set when `Z` has not decayed to the target at the truncation height.
    pub warning: Option<String>,
    primary: Samples,
    refined: Samples,
}

impl InverseMellin {
    pub fn new(z: &ZFn<'_>, params: ContourParams) -> Result<Self> {
        if params.c.is_nan() || params.c <= 2.0 {
            return Err(Error::Validation(format!(
                "contour abscissa c = {} must lie right of all poles (c > 2)",
                params.c
            )));
        }
        let c = params.c;
        let z0 = z(Complex64::new(c, 0.0))?.norm();
        let mut warning = None;
        let t_max = match params.t_max {
            Some(t) if t > 0.0 => t,
            Some(t) => return Err(Error::Validation(format!("T = {t} must be positive"))),
            None => {
                let mut t = T_START;
                loop {
                    let zt = z(Complex64::new(c, t))?.norm().max(z(Complex64::new(c, -t))?.norm());
                    if zt <= DECAY * z0 {
                        break t;
                    }
                    if t >= T_CAP {
                        warning = Some(format!(
                            "|Z(c+iT)| = {zt:.3e} has not decayed below {DECAY:e}·|Z(c)| at T = {t}"
                        ));
                        break t;
                    }
                    t += PANEL_WIDTH;
                }
            }
        };
        let primary = Samples::build(z, c, t_max, params.nodes)?;
        let refined = Samples::build(z, c, 2.0 * t_max, 2 * params.nodes)?;
        Ok(Self {
            c,
            t_max,
            nodes: params.nodes,
            warning,
            primary,
            refined,
        })
    }

    pub fn eval(&self, x: f64) -> Result<Estimate> {
        if x.is_nan() || x <= 0.0 {
            return Err(Error::Domain(format!("x = {x} must be positive")));
        }
        let value = self.primary.transform(self.c, x);
        let fine = self.refined.transform(self.c, x);
        Ok(Estimate {
            value,
            error: (value - fine).abs(),
        })
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval(x)?.value)
    }

    /// `h(x) = f(x) − x^{−1} f(1/x)`.
    pub fn boundary_h(&self, x: f64) -> Result<Estimate> {
        let a = self.eval(x)?;
        let b = self.eval(1.0 / x)?;
        Ok(Estimate {
            value: a.value - b.value / x,
            error: a.error + b.error / x,
        })
    }

    /// `𝔥(x) = x^{−1/2} h(x)`.
    pub fn frak_h(&self, x: f64) -> Result<Estimate> {
        let h = self.boundary_h(x)?;
        let k = x.powf(-0.5);
        Ok(Estimate {
            value: k * h.value,
            error: k * h.error,
        })
    }

    /// The second display `𝔥(x) = x² f(x) − f(1/x)`, evaluated independently.
    pub fn frak_h_alternative(&self, x: f64) -> Result<Estimate> {
        let a = self.eval(x)?;
        let b = self.eval(1.0 / x)?;
        Ok(Estimate {
            value: x * x * a.value - b.value,
            error: x * x * a.error + b.error,
        })
    }

    /// `∫ f(e^u) e^{su} du` over `u ∈ [u_lo, u_hi]` by unit Gauss–Legendre panels.
    pub fn forward(&self, s: Complex64, u_lo: f64, u_hi: f64) -> Result<Complex64> {
        forward_mellin(&|x| self.value(x), s, u_lo, u_hi)
    }
}

/// `∫_{e^{u_lo}}^{e^{u_hi}} f(x) x^s dx/x`.
pub fn forward_mellin(
    f: &(dyn Fn(f64) -> Result<f64> + Sync),
    s: Complex64,
    u_lo: f64,
    u_hi: f64,
) -> Result<Complex64> {
    if u_hi.is_nan() || u_lo.is_nan() || u_hi <= u_lo {
        return Err(Error::Validation("empty integration range".into()));
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(DEFAULT_NODES).expect("nonzero"));
    let panels = (u_hi - u_lo).ceil() as usize * 2;
    let width = (u_hi - u_lo) / panels as f64;
    let terms: Vec<Result<Complex64>> = (0..panels)
        .into_par_iter()
        .map(|k| {
            let a = u_lo + k as f64 * width;
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w) in rule.as_node_weight_pairs() {
                let u = a + 0.5 * width * (x + 1.0);
                acc += (s * u).exp() * f(u.exp())? * (0.5 * width * w);
            }
            Ok(acc)
        })
        .collect();
    terms.into_iter().sum()
}

/// Default round-trip window: `x ∈ [e^{−25}, e^4]`.
pub const ROUND_TRIP_U: (f64, f64) = (-25.0, 4.0);
