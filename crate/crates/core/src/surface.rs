//! Arithmetic surfaces described by base-field invariants, fibre data and
//! horizontal curves: validation, conductor and the surface zeta function.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::dedekind::{dedekind_xi, dedekind_zeta, DedekindTag};
use crate::arith::{prime_power, primes_up_to, quadratic_prime_norms};
use crate::error::{Error, Result};
use crate::ffcurves::{euler_truncated, zeta_closed_form, CurveFF};
use crate::gammafactor::{compute_q, gamma_surface};

/// A number field known through its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumberField {
    pub label: String,
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub abs_disc: u64,
    pub dedekind: DedekindTag,
}

pub type BaseField = NumberField;
pub type HorizontalField = NumberField;

impl NumberField {
    pub fn rational() -> Self {
        Self::from_tag(DedekindTag::Rational)
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        let tag = DedekindTag::Quadratic(d);
        tag.validate()?;
        Ok(Self::from_tag(tag))
    }

    fn from_tag(tag: DedekindTag) -> Self {
        let (r1, r2) = tag.signature();
        let label = match tag {
            DedekindTag::Rational => "Q".to_string(),
            DedekindTag::Quadratic(d) => format!("Q(sqrt({d}))"),
        };
        Self {
            label,
            degree: tag.degree(),
            r1,
            r2,
            abs_disc: tag.abs_disc(),
            dedekind: tag,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.dedekind.validate()?;
        let bad = |what: &str| {
            Err(Error::Validation(format!(
                "field {}: {what} disagrees with its Dedekind tag",
                self.label
            )))
        };
        if self.degree != self.r1 + 2 * self.r2 {
            return Err(Error::Validation(format!(
                "field {}: degree {} != r1 + 2 r2 = {}",
                self.label,
                self.degree,
                self.r1 + 2 * self.r2
            )));
        }
        if self.abs_disc == 0 {
            return Err(Error::Validation(format!("field {}: |d_k| must be >= 1", self.label)));
        }
        if self.degree != self.dedekind.degree() {
            return bad("degree");
        }
        if (self.r1, self.r2) != self.dedekind.signature() {
            return bad("signature");
        }
        if self.abs_disc != self.dedekind.abs_disc() {
            return bad("discriminant");
        }
        Ok(())
    }

    /// Norms of prime ideals up to `bound`, with multiplicity.
    pub fn prime_norms(&self, bound: u64) -> Vec<(u64, usize)> {
        match self.dedekind {
            DedekindTag::Rational => primes_up_to(bound).into_iter().map(|p| (p, 1)).collect(),
            DedekindTag::Quadratic(d) => quadratic_prime_norms(d, bound),
        }
    }
}

/// A split ordinary double point of the given degree over the base residue field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeDesc {
    pub deg: u32,
}

/// The reduced fibre over a prime with residue field `F_p`: normalized
/// components and split nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FibreDesc {
    pub p: u64,
    pub components: Vec<CurveFF>,
    #[serde(default)]
    pub nodes: Vec<NodeDesc>,
    pub good: bool,
}

fn degree_over(base: u64, q: u64) -> Option<u32> {
    let (mut acc, mut k) = (base, 1u32);
    while acc < q {
        acc = acc.checked_mul(base)?;
        k += 1;
    }
    (acc == q).then_some(k)
}

impl FibreDesc {
    pub fn good(curve: CurveFF) -> Self {
        Self {
            p: curve.q,
            components: vec![curve],
            nodes: Vec::new(),
            good: true,
        }
    }

    pub fn singular(p: u64, components: Vec<CurveFF>, node_degrees: &[u32]) -> Self {
        Self {
            p,
            components,
            nodes: node_degrees.iter().map(|d| NodeDesc { deg: *d }).collect(),
            good: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ctx = |msg: String| Error::Validation(format!("fibre over {}: {msg}", self.p));
        if prime_power(self.p).is_none() {
            return Err(ctx("residue cardinality is not a prime power".into()));
        }
        if self.components.is_empty() {
            return Err(ctx("no components".into()));
        }
        if self.good && (self.components.len() != 1 || !self.nodes.is_empty()) {
            return Err(ctx("a good fibre has one component and no nodes".into()));
        }
        if !self.good && self.nodes.is_empty() {
            return Err(ctx("a singular fibre needs at least one node".into()));
        }
        for c in &self.components {
            c.validate().map_err(|e| ctx(e.to_string()))?;
            if degree_over(self.p, c.q).is_none() {
                return Err(ctx(format!("component field F_{} is not an extension of F_{}", c.q, self.p)));
            }
        }
        if self.nodes.iter().any(|n| n.deg == 0) {
            return Err(ctx("node degree must be at least 1".into()));
        }
        Ok(())
    }

    /// `Σ g_z + Σ deg(x) − #components + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        let gz: i64 = self.components.iter().map(|c| c.genus as i64).sum();
        gz + self.conductor_exponent() as i64 - self.components.len() as i64 + 1
    }

    /// `n_p = Σ deg(nodes)`.
    pub fn conductor_exponent(&self) -> u64 {
        self.nodes.iter().map(|n| n.deg as u64).sum()
    }

    /// Residue cardinality `q_p^{deg}` of a node.
    pub fn node_q(&self, n: &NodeDesc) -> Result<u64> {
        self.p
            .checked_pow(n.deg)
            .ok_or(Error::Overflow("node residue cardinality"))
    }
}

/// How `ζ(S, s)` enters the completed product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMode {
    /// Euler product over the supplied fibres.
    #[default]
    Truncated,
    /// Every fibre is `P¹`: `ζ(S, s) = ζ_k(s) ζ_k(s−1)`, continued analytically.
    ProjectiveLine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub genus: u32,
    pub base: BaseField,
    pub fibres: Vec<FibreDesc>,
    pub horizontals: Vec<HorizontalField>,
    pub p_max: u64,
    #[serde(default)]
    pub zeta_mode: ZetaMode,
}

impl SurfaceModel {
    /// Validates and sorts the fibres by residue cardinality.
    pub fn new(
        genus: u32,
        base: BaseField,
        mut fibres: Vec<FibreDesc>,
        horizontals: Vec<HorizontalField>,
        p_max: u64,
    ) -> Result<Self> {
        fibres.sort_by_key(|f| f.p);
        let m = Self {
            genus,
            base,
            fibres,
            horizontals,
            p_max,
            zeta_mode: ZetaMode::Truncated,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_zeta_mode(mut self, mode: ZetaMode) -> Result<Self> {
        if mode == ZetaMode::ProjectiveLine && !self.is_projective_line() {
            return Err(Error::Validation(
                "closed-form zeta needs every fibre to be a projective line".into(),
            ));
        }
        self.zeta_mode = mode;
        Ok(self)
    }

    /// `P¹` over `O_k`, fibres up to `p_max`.
    pub fn projective_line(base: BaseField, p_max: u64) -> Result<Self> {
        let mut fibres = Vec::new();
        for (q, count) in base.prime_norms(p_max) {
            for _ in 0..count {
                fibres.push(FibreDesc::good(CurveFF::projective_line(q)?));
            }
        }
        Self::new(0, base, fibres, Vec::new(), p_max)?.with_zeta_mode(ZetaMode::ProjectiveLine)
    }

    /// The same model restricted to fibres over `p ≤ p_max`.
    pub fn truncated(&self, p_max: u64) -> Result<Self> {
        if p_max > self.p_max {
            return Err(Error::MissingFibre(
                self.base
                    .prime_norms(p_max)
                    .into_iter()
                    .map(|(q, _)| q)
                    .find(|q| *q > self.p_max)
                    .unwrap_or(p_max),
            ));
        }
        let mut out = self.clone();
        out.fibres.retain(|f| f.p <= p_max);
        out.p_max = p_max;
        out.validate()?;
        Ok(out)
    }

    pub fn is_projective_line(&self) -> bool {
        self.genus == 0
            && self
                .fibres
                .iter()
                .all(|f| f.good && f.components[0].genus == 0)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        for h in &self.horizontals {
            h.validate()?;
        }
        for f in &self.fibres {
            f.validate()?;
            if f.p > self.p_max {
                return Err(Error::Validation(format!(
                    "fibre over {} lies beyond p_max = {}",
                    f.p, self.p_max
                )));
            }
            let ga = f.arithmetic_genus();
            if ga != self.genus as i64 {
                return Err(Error::GenusMismatch {
                    fibre: f.p,
                    model: self.genus as i64,
                    found: ga,
                });
            }
        }
        let mut have: BTreeMap<u64, usize> = BTreeMap::new();
        for f in &self.fibres {
            *have.entry(f.p).or_insert(0) += 1;
        }
        let want: BTreeMap<u64, usize> = self.base.prime_norms(self.p_max).into_iter().collect();
        for (q, n) in &want {
            if have.get(q).copied().unwrap_or(0) < *n {
                return Err(Error::MissingFibre(*q));
            }
        }
        for (q, n) in &have {
            let expected = want.get(q).copied().unwrap_or(0);
            if *n > expected {
                return Err(Error::Validation(format!(
                    "{n} fibres over residue cardinality {q}, expected {expected}"
                )));
            }
        }
        Ok(())
    }
}

/// `A(S) = ∏ q_p^{n_p}`.
pub fn conductor(m: &SurfaceModel) -> Result<u128> {
    let mut a: u128 = 1;
    for f in &m.fibres {
        let e = u32::try_from(f.conductor_exponent()).map_err(|_| Error::Overflow("conductor"))?;
        let t = (f.p as u128).checked_pow(e).ok_or(Error::Overflow("conductor"))?;
        a = a.checked_mul(t).ok_or(Error::Overflow("conductor"))?;
    }
    Ok(a)
}

/// `ζ(S_p, s) = ∏ Z_y(q_y^{−s}) · ∏_nodes (1 − q_x^{−s})`; closed forms when
/// `deg_max` is `None`, truncated Euler products otherwise.
pub fn fibre_zeta(fd: &FibreDesc, s: Complex64, deg_max: Option<usize>) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "fibre zeta needs Re(s) > 1, got {}",
            s.re
        )));
    }
    let mut v = Complex64::new(1.0, 0.0);
    for c in &fd.components {
        v *= match deg_max {
            None => zeta_closed_form(c).eval_at_s(s)?,
            Some(d) => euler_truncated(c, s, d)?,
        };
    }
    for n in &fd.nodes {
        let q = fd.node_q(n)? as f64;
        v *= 1.0 - (-s * q.ln()).exp();
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceZeta {
    pub value: Complex64,
    /// `Σ_{p > P_max} (2g+2) p^{1−σ}`, estimated by its integral; infinite for `σ ≤ 2`.
    pub truncation_estimate: f64,
}

/// Euler product over the supplied fibres.
pub fn surface_zeta(m: &SurfaceModel, s: Complex64, deg_max: Option<usize>) -> Result<SurfaceZeta> {
    let vals: Vec<Result<Complex64>> = m
        .fibres
        .par_iter()
        .map(|f| fibre_zeta(f, s, deg_max))
        .collect();
    let mut value = Complex64::new(1.0, 0.0);
    for v in vals {
        value *= v?;
    }
    Ok(SurfaceZeta {
        value,
        truncation_estimate: truncation_estimate(m.genus, m.p_max, s.re),
    })
}

fn truncation_estimate(g: u32, p_max: u64, sigma: f64) -> f64 {
    if sigma <= 2.0 {
        return f64::INFINITY;
    }
    let p = (p_max.max(2)) as f64;
    // ∫_P^∞ x^{1−σ} dx / ln x ≤ P^{2−σ} / ((σ−2) ln P)
    (2 * g + 2) as f64 * p.powf(2.0 - sigma) / ((sigma - 2.0) * p.ln())
}

/// `ζ(S, s)` as used in the completed product: truncated or closed form by mode.
pub fn model_zeta(m: &SurfaceModel, s: Complex64) -> Result<Complex64> {
    match m.zeta_mode {
        ZetaMode::Truncated => Ok(surface_zeta(m, s, None)?.value),
        ZetaMode::ProjectiveLine => {
            let t = m.base.dedekind;
            Ok(continued_zeta(t, s)? * continued_zeta(t, s - 1.0)?)
        }
    }
}

/// `ζ_k(s)` anywhere off its pole, via `ξ`.
pub fn continued_zeta(tag: DedekindTag, s: Complex64) -> Result<Complex64> {
    if s.re >= 0.5 {
        return dedekind_zeta(tag, s);
    }
    let (r1, r2) = tag.signature();
    let gamma = crate::analytic::special::gamma_r(s)?.powi(r1 as i32)
        * crate::analytic::special::gamma_c(s)?.powi(r2 as i32);
    let disc = (s / 2.0 * (tag.abs_disc() as f64).ln()).exp();
    Ok(dedekind_xi(tag, s)? / (disc * gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompletedOptions {
    /// Leave `Q(s)` out of the product.
    pub drop_q: bool,
}

/// The factors of `𝒵(S, {y_i}, s)` and their product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompletedZ {
    pub zeta: Complex64,
    pub conductor: Complex64,
    pub gamma: Complex64,
    pub q: Complex64,
    pub horizontals: Complex64,
    pub base_disc: Complex64,
    pub value: Complex64,
}

/// `𝒵 = ζ(S,s) A^{(1−s)/2} Γ(S,s) Q(s) ∏ ξ(k_i, s/2) · |d_k|^{(1−g)(2s−1)/2}`.
pub fn completed_z(m: &SurfaceModel, s: Complex64, opts: CompletedOptions) -> Result<CompletedZ> {
    let g = m.genus;
    let (r1, r2) = (m.base.r1, m.base.r2);
    let zeta = model_zeta(m, s)?;
    let a = conductor(m)? as f64;
    let conductor = ((1.0 - s) / 2.0 * a.ln()).exp();
    let gamma = gamma_surface(g, r1, r2).eval(s)?;
    let q = if opts.drop_q {
        Complex64::new(1.0, 0.0)
    } else {
        compute_q(g, r1, r2)?.eval(s)
    };
    let mut horizontals = Complex64::new(1.0, 0.0);
    for h in &m.horizontals {
        horizontals *= dedekind_xi(h.dedekind, s / 2.0)?;
    }
    let base_disc = ((1.0 - g as f64) * (2.0 * s - 1.0) / 2.0 * (m.base.abs_disc as f64).ln()).exp();
    Ok(CompletedZ {
        zeta,
        conductor,
        gamma,
        q,
        horizontals,
        base_disc,
        value: zeta * conductor * gamma * q * horizontals * base_disc,
    })
}
