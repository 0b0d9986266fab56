use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::qhalf::forward_owned;
use super::{LaurentValue, QHalfCoeff, Rat};
use crate::error::{Error, Result};

/// Quotient of two Laurent values in X.
///
/// Canonical form: the denominator has lowest X-exponent 0, and when its
/// lowest coefficient is a single `r·q^{e/2}` that coefficient is scaled to 1.
/// Common factors are cancelled when both sides have rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFuncX {
    num: LaurentValue,
    den: LaurentValue,
}

impl RatFuncX {
    pub fn new(num: LaurentValue, den: LaurentValue) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_laurent(v: LaurentValue) -> Self {
        Self {
            num: v,
            den: LaurentValue::one(),
        }
    }

    pub fn num(&self) -> &LaurentValue {
        &self.num
    }

    pub fn den(&self) -> &LaurentValue {
        &self.den
    }

    fn canonical(mut num: LaurentValue, mut den: LaurentValue) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: LaurentValue::one(),
            };
        }
        if let (Some(n), Some(d)) = (num.rat_coeffs(), den.rat_coeffs()) {
            let (n, d) = cancel_rational(&n, &d);
            num = LaurentValue::from_rat_coeffs(&n);
            den = LaurentValue::from_rat_coeffs(&d);
        }
        let k = den.min_exp().unwrap_or(0);
        num = num.shift(-k);
        den = den.shift(-k);
        if let Some((e, r)) = den.coeff(0).as_monomial() {
            let inv = QHalfCoeff::term(-e, r.recip());
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

/// Exact value at `X = x0`, `q = q0`.
pub fn ratfunc_eval(f: &RatFuncX, x0: &Rat, q0: &Rat) -> Result<Rat> {
    let d = f.den.eval_rat(x0, q0)?;
    if d.is_zero() {
        return Err(Error::Pole(format!("X = {x0}")));
    }
    Ok(f.num.eval_rat(x0, q0)? / d)
}

/// Floating-point companion of [`ratfunc_eval`] for non-square `q0`.
pub fn ratfunc_eval_f64(f: &RatFuncX, x0: f64, q0: f64) -> Result<f64> {
    let d = f.den.eval_f64(x0, q0);
    if d == 0.0 {
        return Err(Error::Pole(format!("X = {x0}")));
    }
    Ok(f.num.eval_f64(x0, q0) / d)
}

type Poly = Vec<Rat>;

fn to_dense(m: &BTreeMap<i64, Rat>, lo: i64) -> Poly {
    let hi = m.keys().next_back().copied().unwrap_or(lo);
    let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
    for (i, r) in m {
        v[(i - lo) as usize] = r.clone();
    }
    v
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(Rat::one);
    x.iter().map(|c| c / &lead).collect()
}

fn cancel_rational(
    n: &BTreeMap<i64, Rat>,
    d: &BTreeMap<i64, Rat>,
) -> (BTreeMap<i64, Rat>, BTreeMap<i64, Rat>) {
    let ln = n.keys().next().copied().unwrap_or(0);
    let ld = d.keys().next().copied().unwrap_or(0);
    let pn = to_dense(n, ln);
    let pd = to_dense(d, ld);
    let g = poly_gcd(&pn, &pd);
    if g.len() <= 1 {
        return (n.clone(), d.clone());
    }
    let (qn, _) = poly_divrem(&pn, &g);
    let (qd, _) = poly_divrem(&pd, &g);
    let back = |p: &Poly, lo: i64| -> BTreeMap<i64, Rat> {
        p.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c.clone()))
            .collect()
    };
    (back(&qn, ln), back(&qd, ld))
}

impl Add for &RatFuncX {
    type Output = RatFuncX;
    fn add(self, rhs: &RatFuncX) -> RatFuncX {
        RatFuncX::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RatFuncX {
    type Output = RatFuncX;
    fn neg(self) -> RatFuncX {
        RatFuncX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFuncX {
    type Output = RatFuncX;
    fn sub(self, rhs: &RatFuncX) -> RatFuncX {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncX {
    type Output = RatFuncX;
    fn mul(self, rhs: &RatFuncX) -> RatFuncX {
        RatFuncX::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_owned!(RatFuncX, Add add, Sub sub, Mul mul);
