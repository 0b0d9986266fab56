use adelic_zeta::arith::divisors;
use adelic_zeta::exact::{rat, rint, LaurentValue};
use adelic_zeta::ffcurves::{
    canonical_divisor, closed_point_counts, euler_truncated, point_counts, rr_dim, summation_check,
    zeta_closed_form, CurveFF, CurveFamily, DivisorFF,
};
use adelic_zeta::fixtures::{
    genus2_nodal_component, numerator_from_counts, smooth_hyperelliptic, Hyperelliptic, GENUS2_NODAL_PRIME,
};
use adelic_zeta::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn e5() -> CurveFF {
    CurveFF::new(5, 1, vec![1, 3, 5], CurveFamily::Elliptic).unwrap()
}

/// Affine solutions of `y² = f(x)` over `F_p` plus one point at infinity.
fn brute_count(f: &[i64], p: i64) -> i128 {
    let mut n = 1;
    for x in 0..p {
        let fx = f.iter().rev().fold(0, |acc, c| (acc * x + c).rem_euclid(p));
        n += (0..p).filter(|y| (y * y - fx).rem_euclid(p) == 0).count() as i128;
    }
    n
}

#[test]
fn point_count_examples() {
    let p1 = CurveFF::projective_line(2).unwrap();
    assert_eq!(point_counts(&p1, 2).unwrap(), vec![3, 5]);
    assert_eq!(point_counts(&e5(), 2).unwrap(), vec![9, 27]);
    assert_eq!(brute_count(&[1, 1, 0, 1], 5), 9);
}

#[test]
fn elliptic_f25_count_by_enumeration() {
    let model = Hyperelliptic::new(vec![], vec![1, 1, 0, 1]).unwrap();
    assert_eq!(model.point_counts(5).unwrap(), (9, 27));
    assert_eq!(model.curve(5).unwrap().numerator, vec![1, 3, 5]);
}

#[test]
fn closed_point_examples() {
    let p1 = CurveFF::projective_line(2).unwrap();
    assert_eq!(closed_point_counts(&p1, 3).unwrap(), vec![3, 1, 2]);
    assert_eq!(closed_point_counts(&e5(), 1).unwrap(), vec![9]);
}

#[test]
fn closed_form_examples() {
    let p1 = zeta_closed_form(&CurveFF::projective_line(2).unwrap());
    assert_eq!(p1.denominator, [1, -3, 2]);
    assert_eq!(p1.eval_rat(&rat(1, 8)).unwrap(), rat(32, 21));

    let e = zeta_closed_form(&e5());
    assert!(e.functional_equation);
    let want = (rint(1) + rat(3, 25) + rat(1, 125)) / ((rint(1) - rat(1, 25)) * (rint(1) - rat(1, 5)));
    assert_eq!(e.eval_rat(&rat(1, 25)).unwrap(), want);

    let fake = CurveFF::new(2, 1, vec![1, 1, 1], CurveFamily::Generic).unwrap();
    assert!(!fake.functional_equation_holds());
    assert!(matches!(fake.validate(), Err(Error::InvalidNumerator(_))));
}

#[test]
fn closed_form_pole() {
    let z = zeta_closed_form(&CurveFF::projective_line(3).unwrap());
    assert!(matches!(z.eval_rat(&rint(1)), Err(Error::Pole(_))));
    assert!(matches!(z.eval_rat(&rat(1, 3)), Err(Error::Pole(_))));
}

#[test]
fn euler_product_examples() {
    let p1 = CurveFF::projective_line(2).unwrap();
    let v = euler_truncated(&p1, c(3.0), 20).unwrap();
    assert!((v - 32.0 / 21.0).norm() < 1e-9);

    let exact = zeta_closed_form(&e5()).eval_at_s(c(2.0)).unwrap();
    assert!((euler_truncated(&e5(), c(2.0), 15).unwrap() - exact).norm() < 1e-9);

    let a1 = closed_point_counts(&e5(), 1).unwrap()[0] as f64;
    let one = euler_truncated(&e5(), c(2.5), 1).unwrap();
    assert!((one - (1.0 - 5f64.powf(-2.5)).powf(-a1)).norm() < 1e-14);

    assert!(matches!(euler_truncated(&p1, c(1.0), 5), Err(Error::Domain(_))));
    assert!(matches!(euler_truncated(&p1, c(2.0), 0), Err(Error::Validation(_))));
}

#[test]
fn invalid_numerators() {
    assert!(matches!(CurveFF::new(6, 0, vec![1], CurveFamily::ProjectiveLine), Err(Error::InvalidNumerator(_))));
    assert!(matches!(CurveFF::new(5, 1, vec![1, 3], CurveFamily::Elliptic), Err(Error::InvalidNumerator(_))));
    assert!(matches!(CurveFF::new(5, 1, vec![2, 3, 5], CurveFamily::Elliptic), Err(Error::InvalidNumerator(_))));
    // |a| > 2√q gives negative closed-point counts
    let bad = CurveFF::elliptic(2, 5).unwrap();
    assert!(matches!(closed_point_counts(&bad, 3), Err(Error::ClosedPoints { .. } | Error::InvalidNumerator(_))));
}

#[test]
fn riemann_roch_examples() {
    let p1 = CurveFF::projective_line(3).unwrap();
    assert_eq!(rr_dim(&p1, &DivisorFF::new(3)).unwrap(), 4);
    assert_eq!(rr_dim(&p1, &DivisorFF::new(-1)).unwrap(), 0);
    assert_eq!(rr_dim(&e5(), &DivisorFF::new(1)).unwrap(), 1);
    assert_eq!(rr_dim(&e5(), &DivisorFF::new(0)).unwrap(), 1);
    assert_eq!(rr_dim(&e5(), &DivisorFF::non_principal(0)).unwrap(), 0);
    assert_eq!(canonical_divisor(&p1).degree, -2);
    let g2 = smooth_hyperelliptic(2, 3).unwrap().curve(3).unwrap();
    assert!(matches!(rr_dim(&g2, &DivisorFF::new(1)), Err(Error::Unsupported(_))));
}

#[test]
fn summation_examples() {
    let p1 = CurveFF::projective_line(2).unwrap();
    let r = summation_check(&p1, &DivisorFF::new(0), 0).unwrap();
    assert_eq!(r.lhs, LaurentValue::from_int(2));
    assert!(r.equal);
    let r = summation_check(&p1, &DivisorFF::new(2), 3).unwrap();
    assert_eq!(r.lhs, "8*X^3".parse().unwrap());
    assert!(r.equal);
    let r = summation_check(&e5(), &DivisorFF::new(-1), 2).unwrap();
    assert_eq!(r.lhs, LaurentValue::x_pow(2));
    assert!(r.equal);
}

/// Affine `y² = x²(x³ + x + 1)` over `F_11`: the node at the origin is split
/// when `1` is a square, and the count is `N(E) − 1` for the normalization.
#[test]
fn nodal_genus2_fibre_count() {
    let p = GENUS2_NODAL_PRIME as i64;
    let singular = brute_count(&[0, 0, 1, 1, 0, 1], p);
    let normal = genus2_nodal_component().unwrap();
    let (n1, _) = normal.point_counts(GENUS2_NODAL_PRIME).unwrap();
    assert_eq!(singular, n1 - 1);
    assert_eq!(normal.genus(), 1);
}

#[test]
fn hyperelliptic_counts_match_brute_force() {
    for p in [3u64, 5, 7, 11, 13] {
        for g in [1u32, 2] {
            let m = smooth_hyperelliptic(g, p).unwrap();
            let (n1, _) = m.point_counts(p).unwrap();
            assert_eq!(n1, brute_count(&m.f, p as i64), "g={g} p={p}");
            let curve = m.curve(p).unwrap();
            assert!(curve.functional_equation_holds());
            assert_eq!(point_counts(&curve, 1).unwrap()[0], n1);
        }
    }
}

#[test]
fn characteristic_two_model() {
    let m = smooth_hyperelliptic(2, 2).unwrap();
    assert!(m.smooth_at(2));
    let curve = m.curve(2).unwrap();
    // y² + y = x⁵ over F_2 is supersingular: P(t) = 1 + 4t⁴
    assert_eq!(curve.numerator, vec![1, 0, 0, 0, 4]);
}

#[test]
fn numerator_from_inconsistent_counts() {
    assert!(numerator_from_counts(5, 2, &[9]).is_err());
    assert!(numerator_from_counts(2, 2, &[3, 8]).is_err());
}

fn elliptic_curve() -> impl Strategy<Value = CurveFF> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13]).prop_flat_map(|q| {
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
        (-bound..=bound).prop_map(move |a| CurveFF::elliptic(q, a).unwrap())
    })
}

proptest! {
    #[test]
    fn mobius_identity(curve in elliptic_curve()) {
        let n = point_counts(&curve, 20).unwrap();
        let a = closed_point_counts(&curve, 20).unwrap();
        for k in 1..=20u64 {
            let sum: i128 = divisors(k).iter().map(|d| *d as i128 * a[*d as usize - 1]).sum();
            prop_assert_eq!(sum, n[k as usize - 1]);
        }
    }

    #[test]
    fn hasse_weil_functional_equation(curve in elliptic_curve()) {
        prop_assert!(curve.functional_equation_holds());
        let z = zeta_closed_form(&curve);
        let q = curve.q as i64;
        // Z(1/(qt)) = q^{1−g} t^{2−2g} Z(t) with g = 1
        let t = rat(1, 7 * q);
        let lhs = z.eval_rat(&(rint(1) / (rint(q) * &t))).unwrap();
        prop_assert_eq!(lhs, z.eval_rat(&t).unwrap());
    }

    #[test]
    fn euler_product_converges(curve in elliptic_curve(), s in 2.0f64..4.0) {
        let exact = zeta_closed_form(&curve).eval_at_s(c(s)).unwrap();
        let approx = euler_truncated(&curve, c(s), 30).unwrap();
        prop_assert!(((approx - exact) / exact).norm() < 1e-9);
    }

    #[test]
    fn riemann_roch_identity(curve in elliptic_curve(), deg in -6i64..=6, principal in any::<bool>()) {
        let d = DivisorFF { degree: deg, principal: principal && deg == 0 };
        let k = canonical_divisor(&curve);
        let kd = DivisorFF { degree: k.degree - deg, principal: d.principal };
        let lhs = rr_dim(&curve, &d).unwrap() - rr_dim(&curve, &kd).unwrap();
        prop_assert_eq!(lhs, deg + 1 - curve.genus as i64);
    }
}
