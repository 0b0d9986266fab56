//! Exact arithmetic: rationals, half-integer powers of a residue cardinality q,
//! Laurent polynomials in the formal variable X, rational functions in X, and
//! the rank-2 value group.

mod laurent;
mod qhalf;
mod rank2;
mod ratfunc;
mod text;

pub use laurent::{LaurentOp, LaurentValue};
pub use qhalf::QHalfCoeff;
pub use rank2::{rank2_compare, Rank2Val};
pub use ratfunc::{ratfunc_eval, ratfunc_eval_f64, RatFuncX};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Arbitrary precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `r^k` for any integer `k`; `r` must be nonzero when `k < 0`.
pub fn rat_pow(r: &Rat, k: i64) -> Rat {
    let base = if k < 0 { r.recip() } else { r.clone() };
    let mut acc = Rat::one();
    let mut b = base;
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Integer square root test for a residue cardinality.
pub(crate) fn is_square_u64(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == q)
}
