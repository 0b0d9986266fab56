//! Heuristic mean-periodicity diagnostics for a boundary function `h`.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Logarithmically spaced points in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogGrid {
    pub points: Vec<f64>,
}

impl LogGrid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) || n < 2 {
            return Err(Error::Validation(format!(
                "log grid needs 0 < lo < hi and n >= 2, got [{lo}, {hi}], n = {n}"
            )));
        }
        let (a, b) = (lo.ln(), hi.ln());
        let points = (0..n)
            .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
            .collect();
        Ok(Self { points })
    }

    /// `[1/8, 8]` with 33 points.
    pub fn standard() -> Self {
        Self::new(0.125, 8.0, 33).expect("valid grid")
    }
}

/// Least-squares fit `ln|h(e^{−u})| ≈ a + b|u|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    pub intercept: f64,
    pub rate: f64,
    /// Largest amount by which a sample exceeds the fitted line.
    pub max_excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanPerReport {
    /// `max |h(x) + x^{−1} h(1/x)|` over the grid.
    pub antisymmetry: f64,
    pub growth: GrowthFit,
    /// Singular values of `[h(x_i / x_j)]`, normalized by the largest.
    pub singular_values: Vec<f64>,
    /// Heuristic only: a small tail suggests the translates span a proper subspace.
    pub heuristic: &'static str,
}

pub fn meanper_diagnostic(
    h: &(dyn Fn(f64) -> Result<f64> + Sync),
    grid: &LogGrid,
) -> Result<MeanPerReport> {
    let xs = &grid.points;
    let pairs: Vec<Result<(f64, f64)>> = xs
        .par_iter()
        .map(|x| Ok((h(*x)?, h(1.0 / x)?)))
        .collect();
    let mut antisymmetry: f64 = 0.0;
    let mut samples = Vec::with_capacity(xs.len());
    for (x, p) in xs.iter().zip(pairs) {
        let (a, b) = p?;
        antisymmetry = antisymmetry.max((a + b / x).abs());
        samples.push((x.ln().abs(), a.abs()));
    }
    let growth = fit_growth(&samples);

    let n = xs.len();
    let entries: Vec<Result<f64>> = (0..n * n)
        .into_par_iter()
        .map(|k| h(xs[k / n] / xs[k % n]))
        .collect();
    let entries: Vec<f64> = entries.into_iter().collect::<Result<_>>()?;
    let m = DMatrix::from_row_slice(n, n, &entries);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv.first().copied().unwrap_or(0.0);
    let singular_values = sv
        .into_iter()
        .map(|v| if top > 0.0 { v / top } else { 0.0 })
        .collect();
    Ok(MeanPerReport {
        antisymmetry,
        growth,
        singular_values,
        heuristic: "singular-value tail is a heuristic span indicator, not a test",
    })
}

fn fit_growth(samples: &[(f64, f64)]) -> GrowthFit {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, v)| *v > 0.0)
        .map(|(u, v)| (*u, v.ln()))
        .collect();
    if pts.len() < 2 {
        return GrowthFit {
            intercept: 0.0,
            rate: 0.0,
            max_excess: 0.0,
        };
    }
    let n = pts.len() as f64;
    let mu = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mv = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mu).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mu) * (p.1 - mv)).sum();
    let rate = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = mv - rate * mu;
    let max_excess = pts
        .iter()
        .map(|p| p.1 - (intercept + rate * p.0))
        .fold(0.0, f64::max);
    GrowthFit {
        intercept,
        rate,
        max_excess,
    }
}
