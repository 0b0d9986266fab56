//! Subcommand definitions and their implementations.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use adelic_zeta::analytic::{meanper_diagnostic, tate_decompose, ContourParams, InverseMellin, LogGrid};
use adelic_zeta::exact::{rat_pow, rint};
use adelic_zeta::ffcurves::{
    closed_point_counts, euler_truncated, point_counts, summation_check, zeta_closed_form, CurveFF,
    CurveFamily, DivisorFF,
};
use adelic_zeta::fixtures::{elliptic_synthetic, genus2_synthetic, projective_line_over_q};
use adelic_zeta::gammafactor::{
    check_q_symmetry, compute_q, eval_gamma, gamma_projective_line, gamma_surface, q_exponents,
    sample_points,
};
use adelic_zeta::local2d::Local2DField;
use adelic_zeta::measure2d::{fourier_box, integrate_simple, BoxSet, MeasSet, MeasureMode, SimpleFunction};
use adelic_zeta::schema::load_surface;
use adelic_zeta::surface::{
    completed_z, conductor, fibre_zeta, surface_zeta, CompletedOptions, SurfaceModel,
};
use adelic_zeta::zeta2d::{assemble_zeta2, AssembleOptions};

use crate::output::{Format, Report, Table, Val};

#[derive(Debug)]
pub enum CliError {
    Core(adelic_zeta::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<adelic_zeta::Error> for CliError {
    fn from(e: adelic_zeta::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Rendered output plus an optional tolerance-failure message (exit 3).
pub struct Outcome {
    pub text: String,
    pub tolerance_failure: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "adelic-zeta", version, about = "Two-dimensional adelic zeta integrals on arithmetic surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// P¹ over Q with closed-form zeta.
    P1,
    /// Genus-2 synthetic model with one node at 11.
    Genus2,
    /// Genus-1 synthetic model with a nodal fibre at 7.
    Elliptic,
    /// `Z ≡ 0` (boundary and meanper only).
    Zero,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Surface-description JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Builtin surface model.
    #[arg(long, global = true, value_enum, conflicts_with = "model")]
    pub builtin: Option<Builtin>,
    /// Complex argument `RE[,IM]`.
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE[,IM]")]
    pub s: Option<Complex64>,
    /// Largest prime kept (builtins default to 200).
    #[arg(long, global = true, value_name = "N")]
    pub pmax: Option<u64>,
    /// Truncation degree for Euler products over finite fields.
    #[arg(long, global = true, value_name = "N")]
    pub degmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub out: Format,
    /// Numeric tolerance for checks that can fail with exit code 3.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
    /// Seed for randomized sample points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeta function of a curve over a finite field.
    ZetaCurve(ZetaCurveArgs),
    /// Euler product of a surface model over its fibres.
    ZetaSurface(ZetaSurfaceArgs),
    /// Conductor and per-fibre data of a surface model.
    Conductor,
    /// Per-prime factor table and the assembled squared zeta integral.
    Integral(IntegralArgs),
    /// Gamma factor normal form and the Q(s) factor.
    GammaQ(GammaQArgs),
    /// Tate decomposition of ξ(Q, s) for the Gaussian.
    Tate,
    /// Boundary functions h and 𝔥 from inverse Mellin transforms.
    Boundary(BoundaryArgs),
    /// Heuristic mean-periodicity diagnostics of h.
    Meanper(GridArgs),
    /// Residue-level summation formula on P¹ or an elliptic curve.
    PoissonCheck(PoissonArgs),
    /// Lifted measure of a set on a two-dimensional local field.
    Measure(MeasureArgs),
}

#[derive(Debug, Args)]
pub struct ZetaCurveArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub genus: u32,
    /// Zeta numerator coefficients `1,c1,...,c2g`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub numerator: Option<Vec<i64>>,
    /// Frobenius trace of an elliptic curve (genus 1).
    #[arg(long, allow_hyphen_values = true)]
    pub trace: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ZetaSurfaceArgs {
    /// Also report the completed product 𝒵(s).
    #[arg(long)]
    pub completed: bool,
    /// Leave Q(s) out of the completed product.
    #[arg(long, requires = "completed")]
    pub drop_q: bool,
}

#[derive(Debug, Args)]
pub struct IntegralArgs {
    /// Number of copy pairs (2m copies).
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Skip the analytic completion of the renormalizer beyond P_max.
    #[arg(long)]
    pub no_p1_tail: bool,
}

#[derive(Debug, Args)]
pub struct GammaQArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub r1: u32,
    #[arg(long)]
    pub r2: u32,
    /// Random sample points for the numeric check of Q.
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Comma-separated sample points.
    #[arg(long, value_delimiter = ',', conflicts_with = "grid")]
    pub x: Option<Vec<f64>>,
    /// Log grid `LO,HI,N`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub grid: Option<Vec<f64>>,
    /// Contour abscissa.
    #[arg(long, default_value_t = adelic_zeta::analytic::mellin::DEFAULT_C)]
    pub c: f64,
    /// Truncation height (adaptive when omitted).
    #[arg(long)]
    pub t: Option<f64>,
    /// Gauss–Legendre nodes per panel.
    #[arg(long, default_value_t = adelic_zeta::analytic::mellin::DEFAULT_NODES)]
    pub nodes: usize,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    ProjectiveLine,
    Elliptic,
}

#[derive(Debug, Args)]
pub struct PoissonArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value = "projective-line")]
    pub family: FamilyArg,
    /// Frobenius trace for the elliptic family.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub trace: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub deg: i64,
    /// X-shift `i` of the test function.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub shift: i64,
    /// Treat a degree-0 divisor as principal.
    #[arg(long)]
    pub principal: bool,
    /// All degrees in [-6, 6] and shifts in [-2, 2].
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Additive,
    Multiplicative,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Residue field cardinality.
    #[arg(long)]
    pub q: u64,
    /// Conductor exponent of the character.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub d: i64,
    /// Box `t2^I t1^J O` added to the set; repeatable.
    #[arg(long = "box", allow_hyphen_values = true, value_name = "I,J")]
    pub boxes: Vec<String>,
    /// Box `t2^I t1^J O` subtracted from the set; repeatable.
    #[arg(long = "minus", allow_hyphen_values = true, value_name = "I,J")]
    pub minus: Vec<String>,
    /// Unit coset `I,J` for `t2^I t1^J O^×`; repeatable.
    #[arg(long = "unit", allow_hyphen_values = true, value_name = "I,J")]
    pub units: Vec<String>,
    #[arg(long, value_enum, default_value = "additive")]
    pub mode: ModeArg,
    /// Also report the Fourier transform of the indicator.
    #[arg(long)]
    pub fourier: bool,
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = parts.next().unwrap_or("").trim();
    let re: f64 = re.parse().map_err(|_| format!("invalid real part {re:?}"))?;
    let im = match parts.next() {
        Some(t) => t.trim().parse().map_err(|_| format!("invalid imaginary part {t:?}"))?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err("expected RE or RE,IM".into());
    }
    Ok(Complex64::new(re, im))
}

fn parse_pair(text: &str) -> CliResult<(i64, i64)> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| usage(format!("invalid index {t:?} in {text:?}")))
    };
    match text.split(',').collect::<Vec<_>>().as_slice() {
        [a, b] => Ok((parse(a)?, parse(b)?)),
        _ => Err(usage(format!("expected I,J, got {text:?}"))),
    }
}

fn require_s(c: &Common) -> CliResult<Complex64> {
    c.s.ok_or_else(|| usage("--s is required"))
}

const DEFAULT_BUILTIN_PMAX: u64 = 200;

fn load_model(c: &Common) -> CliResult<SurfaceModel> {
    let m = match (&c.model, c.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let m = load_surface(&text).map_err(|e| match e {
                adelic_zeta::Error::Validation(msg) => {
                    adelic_zeta::Error::Validation(format!("{}: {msg}", path.display()))
                }
                e => e,
            })?;
            match c.pmax {
                Some(p) => m.truncated(p)?,
                None => m,
            }
        }
        (None, Some(b)) => {
            let p = c.pmax.unwrap_or(DEFAULT_BUILTIN_PMAX);
            match b {
                Builtin::P1 => projective_line_over_q(p)?,
                Builtin::Genus2 => genus2_synthetic(p)?,
                Builtin::Elliptic => elliptic_synthetic(p)?,
                Builtin::Zero => return Err(usage("the zero model is only available for boundary and meanper")),
            }
        }
        (None, None) => return Err(usage("a surface model is required: pass --model FILE or --builtin NAME")),
    };
    Ok(m)
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let c = &cli.common;
    let (report, failure) = match &cli.command {
        Command::ZetaCurve(a) => (zeta_curve(c, a)?, None),
        Command::ZetaSurface(a) => (zeta_surface(c, a)?, None),
        Command::Conductor => (conductor_cmd(c)?, None),
        Command::Integral(a) => integral(c, a)?,
        Command::GammaQ(a) => gamma_q(c, a)?,
        Command::Tate => tate(c)?,
        Command::Boundary(a) => boundary(c, a)?,
        Command::Meanper(a) => meanper(c, a)?,
        Command::PoissonCheck(a) => poisson(c, a)?,
        Command::Measure(a) => (measure(a)?, None),
    };
    Ok(Outcome {
        text: report.render(c.out),
        tolerance_failure: failure,
    })
}

type Checked = (Report, Option<String>);

fn check(report: Report, what: &str, err: f64, tol: f64) -> Checked {
    let fail = (err.is_nan() || err > tol).then(|| format!("{what} = {err:e} exceeds tolerance {tol:e}"));
    (report, fail)
}

fn curve_from_args(a: &ZetaCurveArgs) -> CliResult<CurveFF> {
    let curve = match (a.genus, &a.numerator, a.trace) {
        (_, Some(_), Some(_)) => return Err(usage("give either --numerator or --trace")),
        (0, None, None) => CurveFF::projective_line(a.q)?,
        (1, None, Some(t)) => CurveFF::elliptic(a.q, t)?,
        (_, None, Some(_)) => return Err(usage("--trace needs --genus 1")),
        (g, Some(n), None) => {
            let family = match g {
                0 => CurveFamily::ProjectiveLine,
                1 => CurveFamily::Elliptic,
                _ => CurveFamily::Generic,
            };
            CurveFF::new(a.q, g, n.clone(), family)?
        }
        (_, None, None) => return Err(usage("genus > 0 needs --numerator or --trace")),
    };
    curve.validate()?;
    Ok(curve)
}

fn zeta_curve(c: &Common, a: &ZetaCurveArgs) -> CliResult<Report> {
    let s = require_s(c)?;
    let curve = curve_from_args(a)?;
    let cf = zeta_closed_form(&curve);
    let value = cf.eval_at_s(s)?;
    let numerator: Vec<String> = curve.numerator.iter().map(|v| v.to_string()).collect();
    let mut r = Report::new()
        .field("q", curve.q)
        .field("genus", curve.genus)
        .field("numerator", numerator.join(","))
        .field("functional_equation", cf.functional_equation)
        .field("s", s);
    r.add("value", value);
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 64.0 {
        let t = rat_pow(&rint(curve.q as i64), -(s.re as i64));
        r.add("exact", cf.eval_rat(&t)?.to_string());
    }
    let nmax = c.degmax.unwrap_or(6).max(1);
    let counts = point_counts(&curve, nmax)?;
    let closed = closed_point_counts(&curve, nmax)?;
    if let Some(d) = c.degmax {
        let euler = euler_truncated(&curve, s, d)?;
        r.add("euler_degree", d);
        r.add("euler_product", euler);
        r.add("euler_error", (euler - value).norm());
    }
    let mut t = Table::new(&["n", "points", "closed_points"]);
    for (k, (n, a)) in counts.iter().zip(&closed).enumerate() {
        t.push(vec![(k + 1).into(), (*n).into(), (*a).into()]);
    }
    Ok(r.with_table(t))
}

fn zeta_surface(c: &Common, a: &ZetaSurfaceArgs) -> CliResult<Report> {
    let s = require_s(c)?;
    let m = load_model(c)?;
    let sz = surface_zeta(&m, s, c.degmax)?;
    let mut r = Report::new()
        .field("genus", m.genus)
        .field("base", m.base.label.clone())
        .field("p_max", m.p_max)
        .field("fibres", m.fibres.len())
        .field("s", s)
        .field("value", sz.value)
        .field("truncation_estimate", sz.truncation_estimate);
    if a.completed {
        let z = completed_z(&m, s, CompletedOptions { drop_q: a.drop_q })?;
        r.add("completed.zeta", z.zeta);
        r.add("completed.conductor", z.conductor);
        r.add("completed.gamma", z.gamma);
        r.add("completed.q", z.q);
        r.add("completed.horizontals", z.horizontals);
        r.add("completed.base_disc", z.base_disc);
        r.add("completed.value", z.value);
    }
    let mut t = Table::new(&["p", "good", "fibre_zeta"]);
    for f in &m.fibres {
        t.push(vec![f.p.into(), f.good.into(), fibre_zeta(f, s, c.degmax)?.into()]);
    }
    Ok(r.with_table(t))
}

fn conductor_cmd(c: &Common) -> CliResult<Report> {
    let m = load_model(c)?;
    let a = conductor(&m)?;
    let r = Report::new()
        .field("genus", m.genus)
        .field("p_max", m.p_max)
        .field("conductor", a);
    let mut t = Table::new(&["p", "conductor_exponent", "arithmetic_genus", "components", "nodes"]);
    for f in m.fibres.iter().filter(|f| !f.good) {
        t.push(vec![
            f.p.into(),
            f.conductor_exponent().into(),
            f.arithmetic_genus().into(),
            f.components.len().into(),
            f.nodes.len().into(),
        ]);
    }
    Ok(r.with_table(t))
}

fn integral(c: &Common, a: &IntegralArgs) -> CliResult<Checked> {
    let s = require_s(c)?;
    let tol = c.tol.unwrap_or(1e-8);
    let m = load_model(c)?;
    let opts = AssembleOptions {
        m: a.m,
        p1_tail: !a.no_p1_tail,
    };
    let rep = assemble_zeta2(&m, s, opts)?;
    let z = completed_z(&m, s, CompletedOptions::default())?;
    let reference = z.value.powi(2 * a.m as i32);
    let ratio = rep.value / reference;
    let err = (ratio - 1.0).norm();
    let mut t = Table::new(&[
        "p",
        "conductor_exponent",
        "renormalizer_power",
        "net_vertical",
        "cancels",
        "fibre",
        "combined",
        "value",
    ]);
    for (row, v) in rep.rows.iter().zip(&rep.row_values) {
        t.push(vec![
            row.p.into(),
            row.conductor_exponent.into(),
            row.renormalizer_power.into(),
            row.net_vertical.to_string().into(),
            row.cancels().into(),
            row.fibre.to_string().into(),
            row.combined.to_string().into(),
            (*v).into(),
        ]);
    }
    let all_cancel = rep.rows.iter().all(|r| r.cancels());
    let r = Report::new()
        .field("s", s)
        .field("copies", 2 * a.m)
        .field("p1_tail_completed", opts.p1_tail)
        .field("fibre_product", rep.fibre_product)
        .field("p1_tail", rep.p1_tail)
        .field("horizontals", rep.horizontals)
        .field("p1_completion", rep.p1_completion)
        .field("value", rep.value)
        .field("completed_power", reference)
        .field("ratio", ratio)
        .field("ratio_error", err)
        .field("vertical_exponents_cancel", all_cancel)
        .field("tol", tol)
        .with_table(t);
    Ok(check(r, "|ratio - 1|", err, tol))
}

fn gamma_q(c: &Common, a: &GammaQArgs) -> CliResult<Checked> {
    let tol = c.tol.unwrap_or(1e-10);
    let gs = gamma_surface(a.g, a.r1, a.r2);
    let q = compute_q(a.g, a.r1, a.r2)?;
    let ex = q_exponents(a.g, a.r1, a.r2);
    let raw = gamma_projective_line(a.r1, a.r2)
        .pow(1 - a.g as i64)
        .div(&gs);
    let mut worst: f64 = 0.0;
    for s in sample_points(c.seed, a.samples) {
        let direct = eval_gamma(&raw, s)?;
        worst = worst.max((q.eval(s) / direct - 1.0).norm());
    }
    let r = Report::new()
        .field("g", a.g)
        .field("r1", a.r1)
        .field("r2", a.r2)
        .field("gamma_surface", gs.to_string())
        .field("q", format!("{}·(s-1)^{}", q.c, q.m))
        .field("c", q.c.to_string())
        .field("c_value", q.c.to_f64())
        .field("m", q.m)
        .field("sign", check_q_symmetry(&q))
        .field("exponent_display", ex.display)
        .field("exponent_reciprocal", ex.reciprocal)
        .field("exponent_derived", ex.derived)
        .field("seed", c.seed)
        .field("max_relative_error", worst);
    Ok(check(r, "max |Q/ratio - 1|", worst, tol))
}

fn tate(c: &Common) -> CliResult<Checked> {
    let s = require_s(c)?;
    let tol = c.tol.unwrap_or(1e-9);
    let d = tate_decompose(s)?;
    let mut t = Table::new(&["quantity", "re", "im"]);
    for (k, v) in [
        ("eta(s)", d.eta_s),
        ("eta(1-s)", d.eta_reflected),
        ("omega(s)", d.omega),
        ("sum", d.sum),
        ("xi(s)", d.xi),
    ] {
        t.push(vec![k.into(), v.re.into(), v.im.into()]);
    }
    let r = Report::new()
        .field("s", s)
        .field("residual", d.residual)
        .field("tol", tol)
        .with_table(t);
    Ok(check(r, "|sum - xi|", d.residual, tol))
}

fn sample_xs(a: &GridArgs) -> CliResult<Vec<f64>> {
    match (&a.x, &a.grid) {
        (Some(xs), _) => {
            if xs.iter().any(|x| x.is_nan() || *x <= 0.0) {
                return Err(usage("sample points must be positive"));
            }
            Ok(xs.clone())
        }
        (None, Some(g)) => match g.as_slice() {
            [lo, hi, n] if n.fract() == 0.0 && *n >= 2.0 => Ok(LogGrid::new(*lo, *hi, *n as usize)?.points),
            _ => Err(usage("--grid expects LO,HI,N with integer N >= 2")),
        },
        (None, None) => Ok(LogGrid::standard().points),
    }
}

/// Evaluator for `h`, or `None` for the zero model.
fn boundary_source(c: &Common, a: &GridArgs) -> CliResult<Option<InverseMellin>> {
    if c.builtin == Some(Builtin::Zero) && c.model.is_none() {
        return Ok(None);
    }
    let m = load_model(c)?;
    let z = move |s: Complex64| completed_z(&m, s, CompletedOptions::default()).map(|v| v.value);
    let params = ContourParams {
        c: a.c,
        t_max: a.t,
        nodes: a.nodes,
    };
    Ok(Some(InverseMellin::new(&z, params)?))
}

fn boundary(c: &Common, a: &BoundaryArgs) -> CliResult<Checked> {
    let xs = sample_xs(&a.grid)?;
    let im = boundary_source(c, &a.grid)?;
    let mut t = Table::new(&["x", "f", "h", "h_error", "frak_h", "frak_h_alt", "antisymmetry"]);
    let mut worst: f64 = 0.0;
    let mut worst_err: f64 = 0.0;
    for x in &xs {
        let row = match &im {
            None => [0.0; 6],
            Some(im) => {
                let f = im.value(*x)?;
                let h = im.boundary_h(*x)?;
                let hr = im.boundary_h(1.0 / x)?;
                let fh = im.frak_h(*x)?;
                let alt = im.frak_h_alternative(*x)?;
                [f, h.value, h.error, fh.value, alt.value, (h.value + hr.value / x).abs()]
            }
        };
        worst = worst.max(row[5]);
        worst_err = worst_err.max(row[2]);
        let mut cells: Vec<Val> = vec![(*x).into()];
        cells.extend(row.iter().map(|v| Val::from(*v)));
        t.push(cells);
    }
    let tol = c.tol.unwrap_or(1e-6);
    let mut r = Report::new();
    if let Some(im) = &im {
        r.add("c", im.c);
        r.add("t_max", im.t_max);
        r.add("nodes", im.nodes);
        r.add("warning", im.warning.clone().unwrap_or_default());
    }
    r.add("max_antisymmetry", worst);
    r.add("max_h_error", worst_err);
    r.add("tol", tol);
    Ok(check(r.with_table(t), "max |h(x) + h(1/x)/x|", worst, tol))
}

fn meanper(c: &Common, a: &GridArgs) -> CliResult<Checked> {
    let xs = sample_xs(a)?;
    let grid = LogGrid { points: xs };
    let im = boundary_source(c, a)?;
    let h = |x: f64| -> adelic_zeta::Result<f64> {
        match &im {
            None => Ok(0.0),
            Some(im) => Ok(im.boundary_h(x)?.value),
        }
    };
    let rep = meanper_diagnostic(&h, &grid)?;
    let tol = c.tol.unwrap_or(1e-6);
    let mut t = Table::new(&["index", "singular_value"]);
    for (k, v) in rep.singular_values.iter().enumerate() {
        t.push(vec![(k + 1).into(), (*v).into()]);
    }
    let r = Report::new()
        .field("points", grid.points.len())
        .field("antisymmetry", rep.antisymmetry)
        .field("growth.intercept", rep.growth.intercept)
        .field("growth.rate", rep.growth.rate)
        .field("growth.max_excess", rep.growth.max_excess)
        .field("heuristic", rep.heuristic)
        .field("tol", tol)
        .with_table(t);
    Ok(check(r, "antisymmetry residual", rep.antisymmetry, tol))
}

fn poisson(_c: &Common, a: &PoissonArgs) -> CliResult<Checked> {
    let curve = match a.family {
        FamilyArg::ProjectiveLine => CurveFF::projective_line(a.q)?,
        FamilyArg::Elliptic => CurveFF::elliptic(a.q, a.trace)?,
    };
    curve.validate()?;
    closed_point_counts(&curve, 2)?;
    let mut cases = Vec::new();
    if a.sweep {
        for deg in -6..=6 {
            for shift in -2..=2 {
                cases.push((DivisorFF::new(deg), shift));
                if deg == 0 && curve.family == CurveFamily::Elliptic {
                    cases.push((DivisorFF::non_principal(0), shift));
                }
            }
        }
    } else {
        let d = DivisorFF {
            degree: a.deg,
            principal: a.principal && a.deg == 0,
        };
        cases.push((d, a.shift));
    }
    let mut t = Table::new(&["degree", "principal", "shift", "lhs", "rhs", "equal"]);
    let mut failures = 0usize;
    for (d, i) in cases {
        let rep = summation_check(&curve, &d, i)?;
        if !rep.equal {
            failures += 1;
        }
        t.push(vec![
            d.degree.into(),
            d.principal.into(),
            i.into(),
            rep.lhs.to_string().into(),
            rep.rhs.to_string().into(),
            rep.equal.into(),
        ]);
    }
    let r = Report::new()
        .field("q", a.q)
        .field("genus", curve.genus)
        .field("failures", failures)
        .with_table(t);
    let fail = (failures > 0).then(|| format!("{failures} summation checks failed"));
    Ok((r, fail))
}

fn measure(a: &MeasureArgs) -> CliResult<Report> {
    let field = Local2DField::eqchar(a.q, a.d)?;
    let mut set = MeasSet::default();
    for b in &a.boxes {
        let (i, j) = parse_pair(b)?;
        set = set.plus(BoxSet::new(i, j));
    }
    for b in &a.minus {
        let (i, j) = parse_pair(b)?;
        set = set.minus(BoxSet::new(i, j));
    }
    for u in &a.units {
        let (i, j) = parse_pair(u)?;
        set.terms.extend(MeasSet::unit_coset(i, j).terms);
    }
    if set.terms.is_empty() {
        return Err(usage("give at least one --box or --unit"));
    }
    let mode = match a.mode {
        ModeArg::Additive => MeasureMode::Additive,
        ModeArg::Multiplicative => MeasureMode::Multiplicative,
    };
    let func = SimpleFunction::char_of(set);
    let value = integrate_simple(&field, &func, mode)?;
    let mut r = Report::new()
        .field("q", a.q)
        .field("d", a.d)
        .field("mode", format!("{:?}", a.mode).to_lowercase())
        .field("measure", value.to_string());
    if !a.fourier {
        return Ok(r);
    }
    let fhat = fourier_box(&field, &func)?;
    let twice = fourier_box(&field, &fhat)?;
    let mut t = Table::new(&["i", "j", "coefficient"]);
    for ((i, j), v) in fhat.box_coefficients()? {
        t.push(vec![i.into(), j.into(), v.to_string().into()]);
    }
    // μ(B)μ(B^⊥) = 1 and B^⊥⊥ = B, so transforming twice is the identity.
    let involution = twice.box_coefficients()? == func.box_coefficients()?;
    r.add("fourier_involution", involution);
    Ok(r.with_table(t))
}
