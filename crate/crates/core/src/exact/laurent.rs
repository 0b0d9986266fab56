use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::qhalf::forward_owned;
use super::{rat_pow, QHalfCoeff, Rat};
use crate::error::{Error, Result};

/// Finite Laurent polynomial `Σ c_i·X^i` with coefficients in the span of `q^{e/2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentValue {
    terms: BTreeMap<i64, QHalfCoeff>,
}

impl LaurentValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QHalfCoeff::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(QHalfCoeff::from_rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(QHalfCoeff::from_int(n))
    }

    pub fn constant(c: QHalfCoeff) -> Self {
        Self::monomial(0, c)
    }

    /// `c·X^i`.
    pub fn monomial(i: i64, c: QHalfCoeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(i, c);
        }
        Self { terms }
    }

    /// `X^i`.
    pub fn x_pow(i: i64) -> Self {
        Self::monomial(i, QHalfCoeff::one())
    }

    /// `r·q^{e/2}·X^i`.
    pub fn term(i: i64, e: i64, r: Rat) -> Self {
        Self::monomial(i, QHalfCoeff::term(e, r))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, QHalfCoeff)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (i, c) in it {
            out.add_coeff(i, &c);
        }
        out
    }

    fn add_coeff(&mut self, i: i64, c: &QHalfCoeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    /// Drops zero coefficients; values built through the public API are
    /// already canonical, so this is the identity on them.
    pub fn normalize(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, c)| (*i, c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &QHalfCoeff)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, i: i64) -> QHalfCoeff {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(i, c)| (i + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &QHalfCoeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, v)| (*i, v * c)))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, v)| (*i, v.scale(r))))
    }

    /// True when every coefficient is a plain rational (no q-powers).
    pub fn is_q_free(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.terms().all(|(e, _)| e == 0))
    }

    /// Coefficientwise reduction against a concrete residue cardinality.
    pub fn specialize(&self, q: u64) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, c)| (*i, c.specialize(q))))
    }

    pub fn eval_rat(&self, x0: &Rat, q0: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (i, c) in &self.terms {
            if x0.is_zero() && *i < 0 {
                return Err(Error::Pole("X = 0".into()));
            }
            acc += c.eval_rat(q0)? * rat_pow(x0, *i);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x0: f64, q0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(i, c)| c.eval_f64(q0) * x0.powi(*i as i32))
            .sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn rat_coeffs(&self) -> Option<BTreeMap<i64, Rat>> {
        let mut out = BTreeMap::new();
        for (i, c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            out.insert(*i, c.constant()?.clone());
        }
        Some(out)
    }

    pub(crate) fn from_rat_coeffs(m: &BTreeMap<i64, Rat>) -> Self {
        Self::from_terms(m.iter().map(|(i, r)| (*i, QHalfCoeff::from_rat(r.clone()))))
    }
}

impl Add for &LaurentValue {
    type Output = LaurentValue;
    fn add(self, rhs: &LaurentValue) -> LaurentValue {
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.add_coeff(*i, c);
        }
        out
    }
}

impl Neg for &LaurentValue {
    type Output = LaurentValue;
    fn neg(self) -> LaurentValue {
        LaurentValue {
            terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }
}

impl Sub for &LaurentValue {
    type Output = LaurentValue;
    fn sub(self, rhs: &LaurentValue) -> LaurentValue {
        self + &(-rhs)
    }
}

impl Mul for &LaurentValue {
    type Output = LaurentValue;
    fn mul(self, rhs: &LaurentValue) -> LaurentValue {
        let mut out = LaurentValue::zero();
        for (i1, c1) in &self.terms {
            for (i2, c2) in &rhs.terms {
                out.add_coeff(i1 + i2, &(c1 * c2));
            }
        }
        out
    }
}

forward_owned!(LaurentValue, Add add, Sub sub, Mul mul);

impl Neg for LaurentValue {
    type Output = LaurentValue;
    fn neg(self) -> LaurentValue {
        -&self
    }
}

/// Ring operation selector mirroring the arithmetic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
    Neg,
}

impl LaurentValue {
    pub fn arith(a: &LaurentValue, b: &LaurentValue, op: LaurentOp) -> LaurentValue {
        match op {
            LaurentOp::Add => a + b,
            LaurentOp::Mul => a * b,
            LaurentOp::Neg => -a,
        }
    }
}
