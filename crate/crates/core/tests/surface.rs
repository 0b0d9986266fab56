use adelic_zeta::analytic::special::zeta;
use adelic_zeta::arith::primes_up_to;
use adelic_zeta::ffcurves::CurveFF;
use adelic_zeta::fixtures::{elliptic_synthetic, genus2_synthetic, projective_line_over_q, smooth_hyperelliptic};
use adelic_zeta::surface::{
    completed_z, conductor, fibre_zeta, surface_zeta, CompletedOptions, FibreDesc, NumberField, SurfaceModel, ZetaMode,
};
use adelic_zeta::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p1(q: u64) -> CurveFF {
    CurveFF::projective_line(q).unwrap()
}

fn euler_p1(q: f64, s: Complex64) -> Complex64 {
    1.0 / ((1.0 - (-s * q.ln()).exp()) * (1.0 - ((1.0 - s) * q.ln()).exp()))
}

fn elliptic_good(p: u64) -> FibreDesc {
    FibreDesc::good(smooth_hyperelliptic(1, p).unwrap().curve(p).unwrap())
}

/// Genus 1 over `Q` with `p_max = 5`: two split nodes joining two lines at 3,
/// one degree-2 node joining two lines at 5.
fn conductor_225_model() -> SurfaceModel {
    let fibres = vec![
        FibreDesc::singular(5, vec![p1(5), p1(5)], &[2]),
        elliptic_good(2),
        FibreDesc::singular(3, vec![p1(3), p1(3)], &[1, 1]),
    ];
    SurfaceModel::new(1, NumberField::rational(), fibres, vec![], 5).unwrap()
}

#[test]
fn conductor_examples() {
    let good: Vec<FibreDesc> = primes_up_to(13).into_iter().map(elliptic_good).collect();
    let m = SurfaceModel::new(1, NumberField::rational(), good, vec![], 13).unwrap();
    assert_eq!(conductor(&m).unwrap(), 1);
    assert_eq!(conductor(&genus2_synthetic(50).unwrap()).unwrap(), 11);
    assert_eq!(conductor(&elliptic_synthetic(50).unwrap()).unwrap(), 7);
    assert_eq!(conductor(&conductor_225_model()).unwrap(), 225);
}

#[test]
fn fibre_zeta_good_projective_line() {
    let s = c(2.5, 1.0);
    let v = fibre_zeta(&FibreDesc::good(p1(2)), s, None).unwrap();
    assert!((v - euler_p1(2.0, s)).norm() < 1e-14);
}

#[test]
fn fibre_zeta_nodal_cubic() {
    // Z(t) = 1/(1 − 2t): the node glues two rational points into one
    let fd = FibreDesc::singular(2, vec![p1(2)], &[1]);
    assert_eq!(fd.arithmetic_genus(), 1);
    for s in [c(2.0, 0.0), c(3.5, -2.0)] {
        let want = 1.0 / (1.0 - ((1.0 - s) * 2f64.ln()).exp());
        assert!((fibre_zeta(&fd, s, None).unwrap() - want).norm() < 1e-14);
        let e = (fibre_zeta(&fd, s, Some(40)).unwrap() - want).norm();
        assert!(e < 1e-9, "{s} {e}");
    }
}

#[test]
fn fibre_zeta_two_crossing_lines() {
    let fd = FibreDesc::singular(3, vec![p1(3), p1(3)], &[1]);
    assert_eq!(fd.arithmetic_genus(), 0);
    let s = c(2.2, 0.4);
    let want = euler_p1(3.0, s).powi(2) * (1.0 - (-s * 3f64.ln()).exp());
    assert!((fibre_zeta(&fd, s, None).unwrap() - want).norm() < 1e-13);
}

#[test]
fn nodal_fibre_has_nonnegative_closed_point_counts() {
    // Expand ∏ Z(t)·(1 − t) for the nodal cubic: log-derivative coefficients
    // N_n = 2^n must yield a_n ≥ 0 via Möbius inversion.
    let n: Vec<i128> = (1..=12).map(|k| 1i128 << k).collect();
    for k in 1..=12usize {
        let mut acc = 0i128;
        for d in 1..=k {
            if k % d == 0 {
                acc += mobius((k / d) as u64) as i128 * n[d - 1];
            }
        }
        assert!(acc >= 0 && acc % k as i128 == 0);
    }
}

fn mobius(mut n: u64) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

#[test]
fn fibre_zeta_needs_convergent_half_plane() {
    assert!(matches!(fibre_zeta(&FibreDesc::good(p1(2)), c(1.0, 0.0), None), Err(Error::Domain(_))));
}

#[test]
fn projective_line_surface_zeta_within_documented_bound() {
    let want = |s: f64| (zeta(c(s, 0.0)).unwrap() * zeta(c(s - 1.0, 0.0)).unwrap()).re;
    for (p_max, s) in [(10_000u64, 3.0f64), (1_000, 2.5), (200, 4.0)] {
        let m = projective_line_over_q(p_max).unwrap();
        let z = surface_zeta(&m, c(s, 0.0), None).unwrap();
        let rel = (want(s) - z.value.re).abs() / want(s);
        assert!(rel <= z.truncation_estimate, "p_max={p_max} s={s}: {rel} vs {}", z.truncation_estimate);
        assert!(z.value.re < want(s));
    }
    let z3 = want(3.0);
    assert!((z3 - 1.202_056_903_159_594 * 1.644_934_066_848_226).abs() < 1e-12);
}

#[test]
fn projective_line_estimate_is_infinite_at_two() {
    let m = projective_line_over_q(50).unwrap();
    assert!(surface_zeta(&m, c(2.0, 0.0), None).unwrap().truncation_estimate.is_infinite());
}

#[test]
fn empty_model_has_unit_zeta() {
    let m = SurfaceModel::new(0, NumberField::rational(), vec![], vec![], 1).unwrap();
    assert_eq!(surface_zeta(&m, c(3.0, 0.0), None).unwrap().value, c(1.0, 0.0));
    assert_eq!(conductor(&m).unwrap(), 1);
}

#[test]
fn genus2_surface_zeta_is_finite_positive() {
    let z = surface_zeta(&genus2_synthetic(200).unwrap(), c(2.5, 0.0), None).unwrap();
    assert!(z.value.re.is_finite() && z.value.re > 0.0 && z.value.im.abs() < 1e-12);
}

#[test]
fn completed_projective_line() {
    let m = projective_line_over_q(50).unwrap();
    // ξ(3)ξ(2) = ζ(3)/(2π) · π/6 = ζ(3)/12
    let z = completed_z(&m, c(3.0, 0.0), CompletedOptions::default()).unwrap();
    assert!((z.value - 1.202_056_903_159_594 / 12.0).norm() < 1e-12);
    assert_eq!(z.q, c(1.0, 0.0));
    assert!(matches!(completed_z(&m, c(2.0, 0.0), CompletedOptions::default()), Err(Error::Pole(_))));
}

#[test]
fn completed_drop_q_flag() {
    let m = genus2_synthetic(50).unwrap();
    let s = c(3.0, 0.5);
    let with = completed_z(&m, s, CompletedOptions::default()).unwrap();
    let without = completed_z(&m, s, CompletedOptions { drop_q: true }).unwrap();
    assert_eq!(without.q, c(1.0, 0.0));
    assert!((with.value / without.value - with.q).norm() < 1e-12 * with.q.norm());
    // Q(s) = (s−1)²/(2π)²
    let want = (s - 1.0).powi(2) / (4.0 * std::f64::consts::PI.powi(2));
    assert!((with.q - want).norm() < 1e-15);
}

#[test]
fn genus_mismatch_is_rejected() {
    let mut fibres: Vec<FibreDesc> = primes_up_to(7).into_iter().map(elliptic_good).collect();
    fibres[1] = FibreDesc::good(p1(3));
    let r = SurfaceModel::new(1, NumberField::rational(), fibres, vec![], 7);
    assert!(matches!(r, Err(Error::GenusMismatch { fibre: 3, model: 1, found: 0 })));
}

#[test]
fn missing_and_extra_fibres_are_rejected() {
    let fibres: Vec<FibreDesc> = [2u64, 5, 7].into_iter().map(elliptic_good).collect();
    let r = SurfaceModel::new(1, NumberField::rational(), fibres, vec![], 7);
    assert!(matches!(r, Err(Error::MissingFibre(3))));

    let fibres: Vec<FibreDesc> = [2u64, 3, 5, 7, 7].into_iter().map(elliptic_good).collect();
    assert!(SurfaceModel::new(1, NumberField::rational(), fibres, vec![], 7).is_err());

    let fibres: Vec<FibreDesc> = [2u64, 3, 5, 7, 11].into_iter().map(elliptic_good).collect();
    assert!(SurfaceModel::new(1, NumberField::rational(), fibres, vec![], 7).is_err());

    let m = elliptic_synthetic(50).unwrap();
    assert!(matches!(m.truncated(60), Err(Error::MissingFibre(53))));
    assert_eq!(m.truncated(10).unwrap().fibres.len(), 4);
}

#[test]
fn fibre_shape_validation() {
    let bad_good = FibreDesc { good: true, ..FibreDesc::singular(2, vec![p1(2)], &[1]) };
    assert!(bad_good.validate().is_err());
    let no_node = FibreDesc { good: false, ..FibreDesc::good(p1(2)) };
    assert!(no_node.validate().is_err());
    assert!(FibreDesc::singular(6, vec![p1(2)], &[1]).validate().is_err());
    assert!(FibreDesc::singular(3, vec![p1(2)], &[1]).validate().is_err());
    assert!(FibreDesc::singular(2, vec![p1(4)], &[1]).validate().is_ok());
}

#[test]
fn field_validation() {
    assert!(NumberField::quadratic(-4).is_ok());
    assert!(NumberField::quadratic(12).is_ok());
    assert!(matches!(NumberField::quadratic(-3 * 4), Err(Error::Validation(_))));
    let mut k = NumberField::rational();
    k.r1 = 2;
    assert!(k.validate().is_err());
    let g = NumberField::quadratic(-4).unwrap();
    assert_eq!((g.degree, g.r1, g.r2, g.abs_disc), (2, 0, 1, 4));
}

#[test]
fn projective_line_over_gaussian_integers() {
    let k = NumberField::quadratic(-4).unwrap();
    let m = SurfaceModel::projective_line(k, 30).unwrap();
    assert_eq!(m.zeta_mode, ZetaMode::ProjectiveLine);
    // 2 ramifies, p ≡ 1 (4) splits, p ≡ 3 (4) is inert with norm p²
    let qs: Vec<u64> = m.fibres.iter().map(|f| f.p).collect();
    assert_eq!(qs, vec![2, 5, 5, 9, 13, 13, 17, 17, 29, 29]);
    assert!(genus2_synthetic(20).unwrap().with_zeta_mode(ZetaMode::ProjectiveLine).is_err());
}

proptest! {
    #[test]
    fn conductor_is_permutation_invariant(seed in any::<u64>()) {
        let base = conductor_225_model();
        let mut fibres = base.fibres.clone();
        let n = fibres.len();
        for i in 0..n {
            let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) % n as u64) as usize;
            fibres.swap(i, j);
        }
        let m = SurfaceModel::new(1, NumberField::rational(), fibres, vec![], 5).unwrap();
        prop_assert_eq!(conductor(&m).unwrap(), conductor(&base).unwrap());
    }

    #[test]
    fn conductor_is_multiplicative(p_max in 12u64..60) {
        let g2 = genus2_synthetic(p_max).unwrap();
        let e = elliptic_synthetic(p_max).unwrap();
        let fibre_product: u128 = g2.fibres.iter().chain(&e.fibres)
            .map(|f| (f.p as u128).pow(f.conductor_exponent() as u32))
            .product();
        prop_assert_eq!(conductor(&g2).unwrap() * conductor(&e).unwrap(), fibre_product);
    }
}
