use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{is_square_u64, rat_pow, rat_sqrt, rat_to_f64, rint, Rat};
use crate::error::{Error, Result};

/// Finite sum `Σ r·q^{e/2}` keyed by the doubled exponent `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QHalfCoeff {
    terms: BTreeMap<i64, Rat>,
}

impl QHalfCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::term(0, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rint(n))
    }

    /// `r·q^{e/2}`.
    pub fn term(e: i64, r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(e, r);
        }
        Self { terms }
    }

    /// `q^{e/2}`.
    pub fn q_half_pow(e: i64) -> Self {
        Self::term(e, Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, r) in it {
            out.add_term(e, r);
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: i64, r: Rat) {
        if r.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += r;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|r| r.is_one())
    }

    /// Iterates `(e, r)` in increasing `e`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, r)| (*e, r))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single `(e, r)` pair when the value is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, r)| (*e, r))
        } else {
            None
        }
    }

    /// Rational value when only integral q-powers occur, for q = `q0`.
    pub fn constant(&self) -> Option<&Rat> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&0),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Multiplies by `q^{k/2}`.
    pub fn shift_half(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Reduces against a concrete residue cardinality: every value becomes
    /// `a + b·q^{1/2}` with rational `a, b` (just `a` when `q` is a square).
    pub fn specialize(&self, q: u64) -> Self {
        let qr = rint(q as i64);
        let root = is_square_u64(q).map(|r| rint(r as i64));
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let half = e.div_euclid(2);
            let odd = e.rem_euclid(2);
            let mut v = c * rat_pow(&qr, half);
            let mut target = odd;
            if odd == 1 {
                if let Some(r) = &root {
                    v *= r;
                    target = 0;
                }
            }
            out.add_term(target, v);
        }
        out
    }

    /// Exact value at `q = q0`; half-integer powers need `q0` to be a square.
    pub fn eval_rat(&self, q0: &Rat) -> Result<Rat> {
        let root = if self.terms.keys().any(|e| e.rem_euclid(2) == 1) {
            Some(rat_sqrt(q0).ok_or(Error::NeedsFloat)?)
        } else {
            None
        };
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let v = match &root {
                Some(r) => rat_pow(r, *e),
                None => rat_pow(q0, e / 2),
            };
            acc += c * v;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rat_to_f64(c) * q0.powf(*e as f64 / 2.0))
            .sum()
    }
}

impl Add for &QHalfCoeff {
    type Output = QHalfCoeff;
    fn add(self, rhs: &QHalfCoeff) -> QHalfCoeff {
        let mut out = self.clone();
        for (e, r) in &rhs.terms {
            out.add_term(*e, r.clone());
        }
        out
    }
}

impl Neg for &QHalfCoeff {
    type Output = QHalfCoeff;
    fn neg(self) -> QHalfCoeff {
        QHalfCoeff {
            terms: self.terms.iter().map(|(e, r)| (*e, -r)).collect(),
        }
    }
}

impl Sub for &QHalfCoeff {
    type Output = QHalfCoeff;
    fn sub(self, rhs: &QHalfCoeff) -> QHalfCoeff {
        self + &(-rhs)
    }
}

impl Mul for &QHalfCoeff {
    type Output = QHalfCoeff;
    fn mul(self, rhs: &QHalfCoeff) -> QHalfCoeff {
        let mut out = QHalfCoeff::zero();
        for (e1, r1) in &self.terms {
            for (e2, r2) in &rhs.terms {
                out.add_term(e1 + e2, r1 * r2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(QHalfCoeff, Add add, Sub sub, Mul mul);

impl Neg for QHalfCoeff {
    type Output = QHalfCoeff;
    fn neg(self) -> QHalfCoeff {
        -&self
    }
}
