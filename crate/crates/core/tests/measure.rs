use adelic_zeta::exact::{rat, rint, LaurentValue, QHalfCoeff, Rank2Val};
use adelic_zeta::local2d::{module_power_symbolic, module_value, rank2_valuation, Element2D, Local2DField};
use adelic_zeta::measure2d::{
    fourier_box, integrate_simple, measure_additive, measure_multiplicative, BoxSet, MeasSet, MeasureMode,
    SimpleFunction,
};
use adelic_zeta::zeta2d::QsExpr;
use adelic_zeta::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn field(q: u64, d: i64) -> Local2DField {
    Local2DField::eqchar(q, d).unwrap()
}

fn lv(s: &str) -> LaurentValue {
    s.parse().unwrap()
}

fn boxed(i: i64, j: i64) -> MeasSet {
    MeasSet::boxed(BoxSet::new(i, j))
}

#[test]
fn rank2_valuation_examples() {
    assert_eq!(rank2_valuation(&Element2D::new(2, 3)).unwrap(), Rank2Val::new(3, 2));
    assert_eq!(rank2_valuation(&Element2D::one()).unwrap(), Rank2Val::new(0, 0));
    assert_eq!(rank2_valuation(&Element2D::new(-1, 0)).unwrap(), Rank2Val::new(0, -1));
    assert_eq!(rank2_valuation(&Element2D::Zero), Err(Error::ZeroElement));
}

#[test]
fn module_examples() {
    let m = module_value(&field(5, 0), &Element2D::with_unit(2, 3, 7)).unwrap();
    assert_eq!(m, LaurentValue::term(2, 0, rat(1, 125)));
    assert_eq!(module_value(&field(5, 0), &Element2D::with_unit(0, 0, 3)).unwrap(), LaurentValue::one());
    assert_eq!(module_value(&field(2, 0), &Element2D::new(-1, -2)).unwrap(), lv("4*X^-1"));
    let arch = Local2DField::archimedean(false, 0);
    assert!(matches!(module_value(&arch, &Element2D::t1()), Err(Error::Domain(_))));
}

#[test]
fn module_power_examples() {
    let f = field(3, 0);
    let s = Complex64::new(2.0, 0.0);
    let t1 = module_power_symbolic(&f, &Element2D::t1()).unwrap();
    assert_eq!(t1, QsExpr::q_pow(3, rint(-1), rint(0)).unwrap());
    assert_eq!(t1.eval_exact(&rint(2)).unwrap(), Some(rat(1, 9)));
    let t2 = module_power_symbolic(&f, &Element2D::t2()).unwrap();
    assert_eq!(t2, QsExpr::x_pow(rint(1), rint(0)));
    let x = Complex64::new(0.5, 0.0);
    assert!((t2.eval_with_x(s, x).unwrap() - 0.25).norm() < 1e-15);
    let both = module_power_symbolic(&f, &Element2D::new(1, 2)).unwrap();
    assert_eq!(both, &QsExpr::q_pow(3, rint(-2), rint(0)).unwrap() * &QsExpr::x_pow(rint(1), rint(0)));
}

#[test]
fn additive_measure_examples() {
    assert_eq!(measure_additive(&field(5, 0), &boxed(0, 0)).unwrap(), LaurentValue::one());
    assert_eq!(measure_additive(&field(5, 0), &boxed(3, 0)).unwrap(), LaurentValue::x_pow(3));
    assert_eq!(measure_additive(&field(3, 0), &boxed(-1, 2)).unwrap(), lv("1/9*X^-1"));
    let f = SimpleFunction::new()
        .with_rat(rint(2), boxed(0, 0))
        .with_rat(rint(-1), boxed(1, 0));
    assert_eq!(integrate_simple(&field(2, 0), &f, MeasureMode::Additive).unwrap(), lv("2 - X"));
    let d3 = measure_additive(&field(2, 3), &boxed(0, 0)).unwrap();
    assert_eq!(d3, LaurentValue::constant(QHalfCoeff::q_half_pow(3).specialize(2)));
    assert!((d3.eval_f64(1.0, 2.0) - 8f64.sqrt()).abs() < 1e-15);
}

/// `t₁^j O` is `q^k` translates of `t₁^{j+k} O`; the residue-level index
/// gives the ratio directly.
#[test]
fn coset_counting_oracle() {
    for q in [2u64, 3, 4, 5, 7] {
        let f = field(q, 0);
        for j in -2..3 {
            for k in 0..4 {
                let big = measure_additive(&f, &boxed(1, j)).unwrap();
                let small = measure_additive(&f, &boxed(1, j + k)).unwrap();
                let index = rint((q as i64).pow(k as u32));
                assert_eq!(big, small.scale_rat(&index));
            }
        }
    }
}

#[test]
fn shifted_boxes_are_translation_invariant() {
    let f = field(3, 0);
    let plain = measure_additive(&f, &boxed(0, 1)).unwrap();
    let shifted = measure_additive(&f, &MeasSet::boxed(BoxSet::shifted(0, 1, (0, 0)))).unwrap();
    assert_eq!(plain, shifted);
    let mixed = MeasSet::boxed(BoxSet::shifted(0, 1, (0, 0))).minus(BoxSet::new(0, 2));
    assert!(matches!(measure_additive(&f, &mixed), Err(Error::SetAlgebra(_))));
}

#[test]
fn multiplicative_measure_examples() {
    assert_eq!(measure_multiplicative(&field(3, 0), &MeasSet::unit_coset(0, 0)).unwrap(), LaurentValue::one());
    assert_eq!(measure_multiplicative(&field(7, 0), &MeasSet::unit_coset(0, 5)).unwrap(), LaurentValue::one());
    assert_eq!(measure_multiplicative(&field(2, 2), &MeasSet::unit_coset(0, 0)).unwrap(), LaurentValue::from_int(2));
    let f = SimpleFunction::char_of(MeasSet::unit_coset(0, 0)).with(LaurentValue::one(), MeasSet::unit_coset(1, 0));
    assert_eq!(integrate_simple(&field(5, 0), &f, MeasureMode::Multiplicative).unwrap(), LaurentValue::from_int(2));
}

#[test]
fn multiplicative_rejects_sets_containing_zero() {
    let f = field(3, 0);
    assert!(matches!(measure_multiplicative(&f, &boxed(0, 0)), Err(Error::NotUnitCosets(_))));
    let infinite = MeasSet::difference(BoxSet::new(0, 0), BoxSet::new(1, 0));
    assert!(matches!(measure_multiplicative(&f, &infinite), Err(Error::NotUnitCosets(_))));
}

#[test]
fn invalid_set_algebra() {
    let f = field(3, 0);
    let double = boxed(0, 0).plus(BoxSet::new(0, 0));
    assert!(matches!(measure_additive(&f, &double), Err(Error::SetAlgebra(_))));
    let negative = MeasSet::default().minus(BoxSet::new(0, 0));
    assert!(matches!(measure_additive(&f, &negative), Err(Error::SetAlgebra(_))));
}

#[test]
fn fourier_examples() {
    let f0 = field(2, 0);
    let o = SimpleFunction::char_of(boxed(0, 0));
    assert_eq!(fourier_box(&f0, &o).unwrap().box_coefficients().unwrap(), o.box_coefficients().unwrap());

    let t1 = fourier_box(&f0, &SimpleFunction::char_of(boxed(0, 1))).unwrap();
    let want = SimpleFunction::new().with_rat(rat(1, 2), boxed(0, -1));
    assert_eq!(t1.box_coefficients().unwrap(), want.box_coefficients().unwrap());

    let t2 = fourier_box(&f0, &SimpleFunction::char_of(boxed(1, 0))).unwrap();
    let want = SimpleFunction::new().with(LaurentValue::x_pow(1), boxed(-1, 0));
    assert_eq!(t2.box_coefficients().unwrap(), want.box_coefficients().unwrap());

    let shifted = SimpleFunction::char_of(MeasSet::boxed(BoxSet::shifted(0, 0, (1, 0))));
    assert_eq!(fourier_box(&f0, &shifted).unwrap_err(), Error::UnsupportedShift);
}

/// Brute-force transform on `F_p((t))` with `ψ(x) = e(res(x)/p)` and
/// `μ(O) = 1`: `f̂(t^{−m}) = Σ_{x ∈ t^j O / t^L O} ψ(x t^{−m}) p^{−L}`.
fn brute_fourier_at(p: i64, j: i64, level: i64, m: i64) -> f64 {
    let n = (level - j) as u32;
    let mut acc = Complex64::new(0.0, 0.0);
    for code in 0..p.pow(n) {
        // digit k of `code` is the coefficient of t^{j+k}
        let mut digits = code;
        let mut residue = 0;
        for k in 0..n as i64 {
            if j + k - m == -1 {
                residue = digits % p;
            }
            digits /= p;
        }
        let phase = 2.0 * std::f64::consts::PI * residue as f64 / p as f64;
        acc += Complex64::from_polar(1.0, phase);
    }
    acc.re * (p as f64).powi(-(level as i32))
}

#[test]
fn fourier_character_sum_oracle() {
    for p in [2i64, 3, 5] {
        for j in 0..3i64 {
            let hat = fourier_box(&field(p as u64, 0), &SimpleFunction::char_of(boxed(0, j))).unwrap();
            let coeffs = hat.box_coefficients().unwrap();
            assert_eq!(coeffs.len(), 1);
            let (&(i, jd), c) = coeffs.iter().next().unwrap();
            assert_eq!(i, 0);
            let c = c.eval_f64(1.0, p as f64);
            let level = j + 3;
            for m in 0..level {
                let predicted = if -m >= jd { c } else { 0.0 };
                assert!((brute_fourier_at(p, j, level, m) - predicted).abs() < 1e-12, "p={p} j={j} m={m}");
            }
        }
    }
}

fn partition(
    start: (i64, i64),
    steps: &[(bool, i64)],
) -> (BoxSet, Vec<MeasSet>, BoxSet) {
    let outer = BoxSet::new(start.0, start.1);
    let mut cur = outer;
    let mut pieces = Vec::new();
    for (down_t2, k) in steps {
        let next = if *down_t2 {
            BoxSet::new(cur.i + 1, cur.j + k)
        } else {
            BoxSet::new(cur.i, cur.j + k.abs() + 1)
        };
        pieces.push(MeasSet::difference(cur, next));
        cur = next;
    }
    (outer, pieces, cur)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn finite_additivity_on_nested_partitions(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 9]),
        d in -2i64..=2,
        start in (-3i64..3, -3i64..3),
        steps in prop::collection::vec((any::<bool>(), -3i64..3), 1..6),
    ) {
        let f = field(q, d);
        let (outer, pieces, inner) = partition(start, &steps);
        let total = measure_additive(&f, &MeasSet::boxed(outer)).unwrap();
        let mut acc = measure_additive(&f, &MeasSet::boxed(inner)).unwrap();
        let mut union = MeasSet::boxed(inner);
        for p in &pieces {
            acc = &acc + &measure_additive(&f, p).unwrap();
            union.terms.extend(p.terms.iter().copied());
        }
        prop_assert_eq!(&acc, &total);
        prop_assert_eq!(measure_additive(&f, &union).unwrap(), total);
    }

    #[test]
    fn scaling_rules(q in prop::sample::select(vec![2u64, 3, 5, 8]), d in -2i64..=2, i in -4i64..4, j in -4i64..4) {
        let f = field(q, d);
        let s = boxed(i, j);
        let mu = measure_additive(&f, &s).unwrap();
        prop_assert_eq!(measure_additive(&f, &s.scaled(1, 0)).unwrap(), &mu * &LaurentValue::x_pow(1));
        prop_assert_eq!(measure_additive(&f, &s.scaled(0, 1)).unwrap(), mu.scale_rat(&rat(1, q as i64)));
    }

    #[test]
    fn fourier_is_an_involution_on_boxes(
        q in prop::sample::select(vec![2u64, 3, 4, 7]),
        d in -2i64..=2,
        terms in prop::collection::vec((-3i64..3, -3i64..3, -3i64..=3), 1..4),
    ) {
        let f = field(q, d);
        let mut func = SimpleFunction::new();
        for (i, j, c) in terms {
            func = func.with_rat(rint(c), boxed(i, j));
        }
        let twice = fourier_box(&f, &fourier_box(&f, &func).unwrap()).unwrap();
        prop_assert_eq!(twice.box_coefficients().unwrap(), func.box_coefficients().unwrap());
    }

    #[test]
    fn unit_cosets_have_unit_multiplicative_measure(q in prop::sample::select(vec![2u64, 3, 5]), i in -3i64..3, j in -3i64..3, n in 1i64..4) {
        let f = field(q, 0);
        let set = MeasSet::difference(BoxSet::new(i, j), BoxSet::new(i, j + n));
        prop_assert_eq!(measure_multiplicative(&f, &set).unwrap(), LaurentValue::from_int(n));
    }
}
