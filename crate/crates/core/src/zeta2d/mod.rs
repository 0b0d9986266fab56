//! Two-dimensional zeta integrals: per-point and per-fibre factors, the
//! `P¹` renormalizer, horizontal factors and the assembled `ζ^{(2m)}`.

mod qsexpr;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

pub use qsexpr::QsExpr;

use crate::analytic::dedekind::dedekind_xi;
use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::exact::{rint, QHalfCoeff, Rat};
use crate::local2d::PointData;
use crate::surface::{continued_zeta, FibreDesc, HorizontalField, SurfaceModel};

/// Vertical exponent `2 − 2γ` per copy for genus `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct VerticalExponent(pub i64);

impl VerticalExponent {
    pub fn for_genus(g: u32) -> Self {
        Self(2 - 2 * g as i64)
    }
}

/// `(1 − q_x^{−s})^{−1} · q_x^{d(1−s)}`.
pub fn local_factor_smooth(pd: &PointData) -> Result<QsExpr> {
    let q = pd.field.residue_q()?;
    Ok(&QsExpr::euler(q, rint(0), -1)? * &QsExpr::weight(q, pd.field.d)?)
}

/// `ζ(y, s) = P(q^{−s}) / ((1 − q^{−s})(1 − q^{1−s}))`.
pub fn curve_zeta_expr(c: &crate::ffcurves::CurveFF) -> Result<QsExpr> {
    Ok(QsExpr::poly(c.q, &c.numerator, 1)?
        * QsExpr::euler(c.q, rint(0), -1)?
        * QsExpr::euler(c.q, rint(1), -1)?)
}

/// `ζ(S_p, s)` with the node correction `∏ (1 − q_x^{−s})`.
pub fn fibre_zeta_expr(fd: &FibreDesc) -> Result<QsExpr> {
    let mut out = QsExpr::one();
    for c in &fd.components {
        out = out * curve_zeta_expr(c)?;
    }
    for n in &fd.nodes {
        out = out * QsExpr::euler(fd.node_q(n)?, rint(0), 1)?;
    }
    Ok(out)
}

/// Single-copy smooth fibre factor `ζ(y, s) ∏_x q_x^{d(x)(1−s)}` from the
/// points carrying a nonzero conductor, with `Σ d·deg = 2 − 2g` enforced.
pub fn fibre_from_points(
    curve: &crate::ffcurves::CurveFF,
    q_p: u64,
    points: &[PointData],
) -> Result<QsExpr> {
    check_degree_sum(q_p, curve.genus, points)?;
    let mut out = curve_zeta_expr(curve)?;
    for pd in points {
        out = out * QsExpr::weight(pd.field.residue_q()?, pd.field.d)?;
    }
    Ok(out)
}

fn check_degree_sum(q_p: u64, g: u32, points: &[PointData]) -> Result<()> {
    let mut total = 0i64;
    for pd in points {
        let q = pd.field.residue_q()?;
        if q_p.checked_pow(pd.deg) != Some(q) {
            return Err(Error::Validation(format!(
                "point of degree {} has residue cardinality {q}, expected {q_p}^{}",
                pd.deg, pd.deg
            )));
        }
        total += pd.field.d * pd.deg as i64;
    }
    let want = VerticalExponent::for_genus(g).0;
    if total != want {
        return Err(Error::Validation(format!(
            "sum of d(x)·deg(x) is {total}, expected 2 - 2g = {want}"
        )));
    }
    Ok(())
}

/// `∏_x μ(O_x) = ∏ q_x^{d/2}` as an element of `Q[q_p^{1/2}]`, with its
/// renormalization by `q_p^{g−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveMeasure {
    pub raw: QHalfCoeff,
    pub renormalized: QHalfCoeff,
}

pub fn renormalized_curve_measure(q_p: u64, g: u32, points: &[PointData]) -> Result<CurveMeasure> {
    check_degree_sum(q_p, g, points)?;
    let mut raw = QHalfCoeff::one();
    for pd in points {
        raw = &raw * &QHalfCoeff::q_half_pow(pd.field.d * pd.deg as i64);
    }
    let renormalized = &raw * &QHalfCoeff::q_half_pow(2 * (g as i64 - 1));
    Ok(CurveMeasure {
        raw: raw.specialize(q_p),
        renormalized: renormalized.specialize(q_p),
    })
}

/// `ζ(S_p, s)² · q_p^{n_p(1−s)} · q_p^{2(2−2g)(1−s)}`.
pub fn fibre_integral_sq(fd: &FibreDesc, g: u32) -> Result<QsExpr> {
    fd.validate()?;
    let found = fd.arithmetic_genus();
    if found != g as i64 {
        return Err(Error::GenusMismatch {
            fibre: fd.p,
            model: g as i64,
            found,
        });
    }
    let n_p = fd.conductor_exponent() as i64;
    let v = VerticalExponent::for_genus(g).0;
    Ok(fibre_zeta_expr(fd)?.pow(2) * QsExpr::weight(fd.p, n_p + 2 * v)?)
}

/// `ζ(P_p, s)² · q_p^{4(1−s)}`.
pub fn renormalizer_sq(q: u64) -> Result<QsExpr> {
    let p1 = crate::ffcurves::CurveFF::projective_line(q)?;
    Ok(curve_zeta_expr(&p1)?.pow(2) * QsExpr::weight(q, 2 * VerticalExponent::for_genus(0).0)?)
}

/// `ξ(k_i, s/2)²`.
pub fn horizontal_factor(hf: &HorizontalField, s: Complex64) -> Result<Complex64> {
    hf.validate()?;
    Ok(dedekind_xi(hf.dedekind, s / 2.0)?.powi(2))
}

/// One row of the per-prime factor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorRow {
    pub p: u64,
    pub conductor_exponent: u64,
    pub fibre: QsExpr,
    pub renormalizer_power: i64,
    /// `fibre · renormalizer^{g−1}`.
    pub combined: QsExpr,
    /// Exponent `k` of `q_p^{k(1−s)}` left after removing the conductor weight.
    pub net_vertical: Rat,
    /// The two-variable form with the `(1 − X^s)^{−2}` factor kept.
    pub two_variable: QsExpr,
}

impl FactorRow {
    pub fn cancels(&self) -> bool {
        self.net_vertical.is_zero()
    }
}

pub fn factor_row(fd: &FibreDesc, g: u32) -> Result<FactorRow> {
    let fibre = fibre_integral_sq(fd, g)?;
    let k = g as i64 - 1;
    let combined = &fibre * &renormalizer_sq(fd.p)?.pow(k);
    let n_p = fd.conductor_exponent() as i64;
    let stripped = &combined * &QsExpr::weight(fd.p, -n_p)?;
    let (prime, e) = prime_power(fd.p).ok_or_else(|| Error::Validation("not a prime power".into()))?;
    let net_vertical = match stripped.power_of(prime) {
        None => Rat::zero(),
        // p^{a s + b} with a = −k·e
        Some((a, _)) => -a / rint(e as i64),
    };
    let two_variable = &fibre * &QsExpr::x_geometric(-2);
    Ok(FactorRow {
        p: fd.p,
        conductor_exponent: n_p as u64,
        fibre,
        renormalizer_power: k,
        combined,
        net_vertical,
        two_variable,
    })
}

pub fn factor_table(m: &SurfaceModel) -> Result<Vec<FactorRow>> {
    m.fibres
        .par_iter()
        .map(|f| factor_row(f, m.genus))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssembleOptions {
    /// `m` in `n_copies = 2m`.
    pub m: u32,
    /// Complete the renormalizer beyond `P_max` with `ζ_k(s)ζ_k(s−1)`.
    pub p1_tail: bool,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        Self { m: 1, p1_tail: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Zeta2Report {
    pub rows: Vec<FactorRow>,
    pub row_values: Vec<Complex64>,
    pub fibre_product: Complex64,
    pub p1_tail: Complex64,
    pub horizontals: Complex64,
    pub p1_completion: Complex64,
    pub value: Complex64,
}

/// `ξ(P¹(O_k), s) = ξ(k, s) ξ(k, s−1)`.
pub fn xi_projective_line(m: &SurfaceModel, s: Complex64) -> Result<Complex64> {
    let t = m.base.dedekind;
    Ok(dedekind_xi(t, s)? * dedekind_xi(t, s - 1.0)?)
}

/// `[∏_p fibre·renormalizer^{g−1} · tail]^m · ∏ ξ(k_i, s/2)^{2m} · ξ(P¹(O_k), s)^{2m(1−g)}`.
pub fn assemble_zeta2(m: &SurfaceModel, s: Complex64, opts: AssembleOptions) -> Result<Zeta2Report> {
    if s.re <= 2.0 {
        return Err(Error::Domain(format!(
            "zeta integral converges for Re(s) > 2, got {}",
            s.re
        )));
    }
    if opts.m == 0 {
        return Err(Error::Validation("number of copy pairs m must be at least 1".into()));
    }
    let rows = factor_table(m)?;
    let vals: Vec<Result<Complex64>> = rows.par_iter().map(|r| r.combined.eval(s)).collect();
    let row_values: Vec<Complex64> = vals.into_iter().collect::<Result<_>>()?;
    let fibre_product: Complex64 = row_values.iter().product();
    let k = m.genus as i32 - 1;
    let p1_tail = if opts.p1_tail && k != 0 {
        let t = m.base.dedekind;
        let full = continued_zeta(t, s)? * continued_zeta(t, s - 1.0)?;
        let mut partial = Complex64::new(1.0, 0.0);
        for f in &m.fibres {
            let q = f.p as f64;
            let a = 1.0 - (-s * q.ln()).exp();
            let b = 1.0 - ((1.0 - s) * q.ln()).exp();
            partial /= a * b;
        }
        (full / partial).powi(2 * k)
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut horizontals = Complex64::new(1.0, 0.0);
    for h in &m.horizontals {
        horizontals *= horizontal_factor(h, s)?;
    }
    let p1_completion = xi_projective_line(m, s)?.powi(-2 * k);
    let mm = opts.m as i32;
    let value = (fibre_product * p1_tail).powi(mm) * horizontals.powi(mm) * p1_completion.powi(mm);
    Ok(Zeta2Report {
        rows,
        row_values,
        fibre_product,
        p1_tail,
        horizontals,
        p1_completion,
        value,
    })
}
