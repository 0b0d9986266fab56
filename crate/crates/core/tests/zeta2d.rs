use std::f64::consts::PI;

use adelic_zeta::analytic::special::zeta;
use adelic_zeta::analytic::{dedekind_xi, DedekindTag};
use adelic_zeta::exact::{rat, rint, Rat};
use adelic_zeta::ffcurves::{CurveFF, CurveFamily};
use adelic_zeta::fixtures::{elliptic_synthetic, genus2_synthetic, projective_line_over_q, smooth_hyperelliptic};
use adelic_zeta::local2d::{Local2DField, PointData};
use adelic_zeta::surface::{completed_z, surface_zeta, CompletedOptions, FibreDesc, NumberField};
use adelic_zeta::zeta2d::{
    assemble_zeta2, curve_zeta_expr, factor_row, factor_table, fibre_from_points, fibre_integral_sq, fibre_zeta_expr,
    horizontal_factor, local_factor_smooth, renormalized_curve_measure, renormalizer_sq, xi_projective_line,
    AssembleOptions, QsExpr, VerticalExponent,
};
use adelic_zeta::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point(q: u64, d: i64, deg: u32) -> PointData {
    PointData::new(Local2DField::eqchar(q, d).unwrap(), deg).unwrap()
}

fn exact(e: &QsExpr, s: Rat) -> Rat {
    e.eval_exact(&s).unwrap().unwrap()
}

#[test]
fn local_factor_examples() {
    assert_eq!(exact(&local_factor_smooth(&point(2, 0, 1)).unwrap(), rint(2)), rat(4, 3));
    assert_eq!(exact(&local_factor_smooth(&point(3, -1, 1)).unwrap(), rint(1)), rat(3, 2));
    assert_eq!(exact(&local_factor_smooth(&point(2, 2, 1)).unwrap(), rint(1)), rint(2));
    // q=3, d=−1 at s=3: (1 − 1/27)^{−1} · 3^{2}
    assert_eq!(exact(&local_factor_smooth(&point(3, -1, 1)).unwrap(), rint(3)), rat(27 * 9, 26));
}

#[test]
fn vertical_exponent_per_genus() {
    assert_eq!(VerticalExponent::for_genus(0).0, 2);
    assert_eq!(VerticalExponent::for_genus(1).0, 0);
    assert_eq!(VerticalExponent::for_genus(2).0, -2);
}

#[test]
fn good_elliptic_fibre_has_no_weight() {
    let e = CurveFF::new(5, 1, vec![1, 3, 5], CurveFamily::Elliptic).unwrap();
    let fd = FibreDesc::good(e.clone());
    let sq = fibre_integral_sq(&fd, 1).unwrap();
    assert_eq!(sq, curve_zeta_expr(&e).unwrap().pow(2));
    assert!(sq.powers().next().is_none());
}

#[test]
fn good_genus2_fibre_weight() {
    let curve = smooth_hyperelliptic(2, 3).unwrap().curve(3).unwrap();
    let sq = fibre_integral_sq(&FibreDesc::good(curve.clone()), 2).unwrap();
    let want = curve_zeta_expr(&curve).unwrap().pow(2) * QsExpr::weight(3, -4).unwrap();
    assert_eq!(sq, want);
    assert_eq!(sq.power_of(3), Some(&(rint(4), rint(0))));
}

#[test]
fn nodal_fibre_integral() {
    let fd = FibreDesc::singular(2, vec![CurveFF::projective_line(2).unwrap()], &[1]);
    let sq = fibre_integral_sq(&fd, 1).unwrap();
    let want = QsExpr::euler(2, rint(1), -2).unwrap() * QsExpr::weight(2, 1).unwrap();
    assert_eq!(sq, want);
    let s = rint(3);
    // (1/(1 − 1/4))² · 2^{−2}
    assert_eq!(exact(&sq, s), rat(16, 9) / rint(4));
}

#[test]
fn fibre_weights_vanish_at_one() {
    for fd in genus2_synthetic(30).unwrap().fibres.iter().chain(&elliptic_synthetic(30).unwrap().fibres) {
        let g = fd.arithmetic_genus() as u32;
        let sq = fibre_integral_sq(fd, g).unwrap();
        let z = fibre_zeta_expr(fd).unwrap().pow(2);
        let weight = &sq * &z.pow(-1);
        assert_eq!(exact(&weight, rint(1)), rint(1));
        let s = c(2.7, 0.3);
        let ratio = sq.eval(s).unwrap() / z.eval(s).unwrap();
        let n = (fd.conductor_exponent() as i64 + 2 * VerticalExponent::for_genus(g).0) as f64;
        let want = ((1.0 - s) * n * (fd.p as f64).ln()).exp();
        assert!((ratio / want - 1.0).norm() < 1e-12);
    }
}

#[test]
fn renormalizer_examples() {
    assert_eq!(exact(&renormalizer_sq(2).unwrap(), rint(2)), rat(4, 9));
    let r = renormalizer_sq(7).unwrap();
    assert!(r.power_of(7).is_some());
    assert!(matches!(r.eval_exact(&rint(1)), Err(Error::Pole(_))));
    let stripped = &r * &QsExpr::weight(7, -4).unwrap();
    let p1 = curve_zeta_expr(&CurveFF::projective_line(7).unwrap()).unwrap().pow(2);
    assert_eq!(stripped, p1);
}

#[test]
fn exponent_cancellation_every_prime() {
    for m in [genus2_synthetic(200).unwrap(), elliptic_synthetic(200).unwrap()] {
        let rows = factor_table(&m).unwrap();
        assert_eq!(rows.len(), m.fibres.len());
        for r in &rows {
            assert!(r.cancels(), "p = {}", r.p);
            assert_eq!(r.renormalizer_power, m.genus as i64 - 1);
            assert!(r.two_variable.has_x() && !r.fibre.has_x());
        }
    }
}

#[test]
fn fibre_from_point_data() {
    let e = CurveFF::new(5, 1, vec![1, 3, 5], CurveFamily::Elliptic).unwrap();
    let pts = [point(5, 1, 1), point(5, -1, 1)];
    assert_eq!(fibre_from_points(&e, 5, &pts).unwrap(), curve_zeta_expr(&e).unwrap());
    assert!(fibre_from_points(&e, 5, &[point(5, 1, 1)]).is_err());
    assert!(fibre_from_points(&e, 5, &[point(25, 0, 1)]).is_err());

    let p1 = CurveFF::projective_line(3).unwrap();
    let pts = [point(9, 1, 2)];
    let want = curve_zeta_expr(&p1).unwrap() * QsExpr::weight(3, 2).unwrap();
    assert_eq!(fibre_from_points(&p1, 3, &pts).unwrap(), want);
}

#[test]
fn curve_measure_renormalization() {
    let pts = [point(3, 1, 1), point(3, 1, 1)];
    let m = renormalized_curve_measure(3, 0, &pts).unwrap();
    assert_eq!(m.raw.to_string(), "3");
    assert_eq!(m.renormalized.to_string(), "1");
    let m = renormalized_curve_measure(2, 2, &[point(2, -1, 1), point(4, -1, 2)][..1]);
    assert!(m.is_err());
    let m = renormalized_curve_measure(2, 2, &[point(2, -2, 1)]).unwrap();
    assert_eq!(m.raw.to_string(), "1/2");
    assert_eq!(m.renormalized.to_string(), "1");
}

#[test]
fn horizontal_factor_examples() {
    let q = NumberField::rational();
    let v = horizontal_factor(&q, c(4.0, 0.0)).unwrap();
    assert!((v - (PI / 6.0).powi(2)).norm() < 1e-12);
    assert!((v.re - 0.27416).abs() < 1e-5);
    assert!(matches!(horizontal_factor(&q, c(2.0, 0.0)), Err(Error::Pole(_))));

    // ξ(Q(i), 2) = 4 · Γ_C(2) · ζ(2) · L(2, χ_{−4}) from direct series
    let l: f64 = (0..1_000_000u64).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / ((2 * k + 1) as f64).powi(2)).sum();
    let xi = 4.0 * 2.0 / (2.0 * PI).powi(2) * (PI * PI / 6.0) * l;
    let v = horizontal_factor(&NumberField::quadratic(-4).unwrap(), c(4.0, 0.0)).unwrap();
    assert!((v - xi * xi).norm() < 1e-11);
}

fn ratio_to_completed(m: &adelic_zeta::surface::SurfaceModel, s: Complex64, mm: u32) -> f64 {
    let a = assemble_zeta2(m, s, AssembleOptions { m: mm, p1_tail: true }).unwrap();
    let z = completed_z(m, s, CompletedOptions::default()).unwrap().value;
    (a.value / z.powi(2 * mm as i32) - 1.0).norm()
}

#[test]
fn elliptic_assembly_matches_completed_square() {
    let m = elliptic_synthetic(200).unwrap();
    for s in [c(3.0, 0.0), c(2.6, 1.5)] {
        assert!(ratio_to_completed(&m, s, 1) < 1e-10, "s = {s}");
    }
    let a = assemble_zeta2(&m, c(3.0, 0.0), AssembleOptions::default()).unwrap();
    assert_eq!(a.p1_tail, c(1.0, 0.0));
    assert_eq!(a.p1_completion, c(1.0, 0.0));
}

#[test]
fn genus2_assembly_matches_completed_square() {
    let m = genus2_synthetic(200).unwrap();
    for s in [c(2.5, 0.0), c(3.0, 0.0), c(2.2, 0.5)] {
        assert!(ratio_to_completed(&m, s, 1) < 1e-10, "s = {s}");
    }
    assert!(ratio_to_completed(&m, c(3.0, 0.0), 2) < 1e-10);
}

#[test]
fn genus2_assembly_needs_the_tail() {
    let m = genus2_synthetic(200).unwrap();
    let s = c(2.5, 0.0);
    let a = assemble_zeta2(&m, s, AssembleOptions { m: 1, p1_tail: false }).unwrap();
    let z = completed_z(&m, s, CompletedOptions::default()).unwrap().value;
    assert!((a.value / (z * z) - 1.0).norm() > 1e-3);
}

#[test]
fn projective_line_assembly() {
    // g = 0: fibre and renormalizer cancel prime by prime, leaving
    // ξ(P¹)² · (ζ_{≤P}(P¹) / ζ(P¹))².
    let m = projective_line_over_q(200).unwrap();
    let s = c(3.0, 0.0);
    let a = assemble_zeta2(&m, s, AssembleOptions::default()).unwrap();
    assert!((a.fibre_product - 1.0).norm() < 1e-14);
    let partial = surface_zeta(&m, s, None).unwrap().value;
    let full = zeta(s).unwrap() * zeta(s - 1.0).unwrap();
    let want = xi_projective_line(&m, s).unwrap().powi(2) * (partial / full).powi(2);
    assert!((a.value / want - 1.0).norm() < 1e-12);
    let xi = dedekind_xi(DedekindTag::Rational, s).unwrap() * dedekind_xi(DedekindTag::Rational, s - 1.0).unwrap();
    assert!((xi_projective_line(&m, s).unwrap() - xi).norm() < 1e-15);
}

/// Without the tail the renormalizer is cut at `P_max`; the defect shrinks as `P_max` grows.
#[test]
fn untailed_assembly_converges_in_p_max() {
    let full = genus2_synthetic(400).unwrap();
    for s in [2.5, 3.0, 4.0] {
        let s = c(s, 0.0);
        let errs: Vec<f64> = [25u64, 100, 400]
            .iter()
            .map(|p| {
                let m = full.truncated(*p).unwrap();
                let a = assemble_zeta2(&m, s, AssembleOptions { m: 1, p1_tail: false }).unwrap();
                let z = completed_z(&m, s, CompletedOptions::default()).unwrap().value;
                (a.value / (z * z) - 1.0).norm()
            })
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "s = {s}: {errs:?}");
    }
}

#[test]
fn assembly_domain_errors() {
    let m = elliptic_synthetic(30).unwrap();
    assert!(matches!(assemble_zeta2(&m, c(2.0, 0.0), AssembleOptions::default()), Err(Error::Domain(_))));
    let zero = AssembleOptions { m: 0, p1_tail: true };
    assert!(matches!(assemble_zeta2(&m, c(3.0, 0.0), zero), Err(Error::Validation(_))));
}

#[test]
fn singular_row_uses_arithmetic_genus() {
    let m = elliptic_synthetic(30).unwrap();
    let fd = m.fibres.iter().find(|f| !f.good).unwrap();
    let row = factor_row(fd, 1).unwrap();
    assert_eq!(row.conductor_exponent, 1);
    assert!(row.cancels());
    assert!(matches!(factor_row(fd, 2), Err(Error::GenusMismatch { .. })));
}

fn atom() -> impl Strategy<Value = QsExpr> {
    prop_oneof![
        (prop::sample::select(vec![2u64, 3, 4, 5, 9]), -3i64..=3).prop_map(|(q, k)| QsExpr::weight(q, k).unwrap()),
        (prop::sample::select(vec![2u64, 3, 4]), 0i64..=1, -2i64..=2)
            .prop_map(|(q, a, k)| QsExpr::euler(q, rint(a), k).unwrap()),
        (-2i64..=2).prop_map(|k| QsExpr::poly(5, &[1, 3, 5], k).unwrap()),
        (1i64..=4, 1i64..=3).prop_map(|(n, d)| QsExpr::constant(rat(n, d))),
        (-2i64..=2, -2i64..=2).prop_map(|(a, b)| QsExpr::x_pow(rint(a), rat(b, 2))),
    ]
}

proptest! {
    #[test]
    fn normal_form_ignores_order(atoms in prop::collection::vec(atom(), 1..8), seed in any::<u64>()) {
        let forward: QsExpr = atoms.iter().cloned().product();
        let mut shuffled = atoms.clone();
        let n = shuffled.len();
        for i in 0..n {
            let j = (seed.rotate_left(i as u32 * 7) % n as u64) as usize;
            shuffled.swap(i, j);
        }
        let backward: QsExpr = shuffled.into_iter().rev().product();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn powers_compose(a in atom(), j in -3i64..=3, k in -3i64..=3) {
        prop_assert_eq!(a.pow(j) * a.pow(k), a.pow(j + k));
        prop_assert_eq!(a.pow(j).pow(k), a.pow(j * k));
    }

    #[test]
    fn exact_and_float_eval_agree(atoms in prop::collection::vec(atom(), 1..6), s in 2i64..5) {
        let e: QsExpr = atoms.into_iter().product();
        prop_assume!(!e.has_x());
        let x = exact(&e, rint(s));
        let f = e.eval(c(s as f64, 0.0)).unwrap();
        let xf = num_traits::ToPrimitive::to_f64(&x).unwrap();
        prop_assert!((f.re - xf).abs() <= 1e-12 * xf.abs().max(1.0));
    }
}
