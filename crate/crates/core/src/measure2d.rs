//! The lifted `R((X))`-valued Haar measure on a two-dimensional local field.
//!
//! Sets are built from boxes `t₂^i t₁^j O_F`. Boxes form a chain under
//! inclusion: `t₂^i t₁^j O_F ⊇ t₂^{i'} t₁^{j'} O_F` exactly when
//! `(j, i) ≤ (j', i')` in the rank-2 order, so every signed combination of
//! boxes is a step function along that chain.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{LaurentValue, QHalfCoeff, Rank2Val, Rat};
use crate::local2d::Local2DField;

/// `α + t₂^i t₁^j O_F`; `shift` is `None` for `α = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxSet {
    pub i: i64,
    pub j: i64,
    pub shift: Option<(i64, i64)>,
}

impl BoxSet {
    pub fn new(i: i64, j: i64) -> Self {
        Self { i, j, shift: None }
    }

    pub fn shifted(i: i64, j: i64, alpha: (i64, i64)) -> Self {
        Self {
            i,
            j,
            shift: Some(alpha),
        }
    }

    fn key(&self) -> Rank2Val {
        Rank2Val::new(self.j, self.i)
    }

    fn from_key(k: Rank2Val) -> Self {
        Self::new(k.v2, k.v1)
    }

    /// The orthogonal box `t₂^{−i} t₁^{d−j} O_F` for a character of conductor exponent `d`.
    pub fn dual(&self, d: i64) -> Self {
        Self::new(-self.i, d - self.j)
    }
}

/// Signed combination `Σ ±char(B)` of boxes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MeasSet {
    pub terms: Vec<(i8, BoxSet)>,
}

/// One disjoint piece of a normalized set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    /// `outer \ inner` with `outer ⊋ inner`.
    Annulus { outer: BoxSet, inner: BoxSet },
    Whole(BoxSet),
}

impl MeasSet {
    pub fn boxed(b: BoxSet) -> Self {
        Self {
            terms: vec![(1, b)],
        }
    }

    /// `t₂^i t₁^j O_F^×`.
    pub fn unit_coset(i: i64, j: i64) -> Self {
        Self {
            terms: vec![(1, BoxSet::new(i, j)), (-1, BoxSet::new(i, j + 1))],
        }
    }

    /// `outer \ inner`.
    pub fn difference(outer: BoxSet, inner: BoxSet) -> Self {
        Self {
            terms: vec![(1, outer), (-1, inner)],
        }
    }

    pub fn plus(mut self, b: BoxSet) -> Self {
        self.terms.push((1, b));
        self
    }

    pub fn minus(mut self, b: BoxSet) -> Self {
        self.terms.push((-1, b));
        self
    }

    /// Scales every box by `t₂^a t₁^b`.
    pub fn scaled(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, bx)| {
                    (
                        *c,
                        BoxSet {
                            i: bx.i + a,
                            j: bx.j + b,
                            shift: bx.shift.map(|(x, y)| (x + a, y + b)),
                        },
                    )
                })
                .collect(),
        }
    }

    /// Disjoint decomposition, or an error when the signed combination is
    /// not an indicator function.
    pub fn normalize(&self) -> Result<Vec<Piece>> {
        if self.terms.iter().any(|(_, b)| b.shift.is_some()) {
            return match self.terms.as_slice() {
                [(1, b)] => Ok(vec![Piece::Whole(*b)]),
                _ => Err(Error::SetAlgebra(
                    "shifted boxes can only stand alone".into(),
                )),
            };
        }
        let mut coeffs: BTreeMap<Rank2Val, i64> = BTreeMap::new();
        for (c, b) in &self.terms {
            if *c != 1 && *c != -1 {
                return Err(Error::SetAlgebra(format!("coefficient {c} is not ±1")));
            }
            *coeffs.entry(b.key()).or_insert(0) += *c as i64;
        }
        coeffs.retain(|_, c| *c != 0);
        let keys: Vec<(Rank2Val, i64)> = coeffs.into_iter().collect();
        let mut pieces = Vec::new();
        let mut level = 0i64;
        for (idx, (k, c)) in keys.iter().enumerate() {
            level += c;
            if level != 0 && level != 1 {
                return Err(Error::SetAlgebra(format!(
                    "multiplicity {level} on the region below t2^{} t1^{} O",
                    k.v2, k.v1
                )));
            }
            if level == 1 {
                let outer = BoxSet::from_key(*k);
                match keys.get(idx + 1) {
                    Some((next, _)) => pieces.push(Piece::Annulus {
                        outer,
                        inner: BoxSet::from_key(*next),
                    }),
                    None => pieces.push(Piece::Whole(outer)),
                }
            }
        }
        Ok(pieces)
    }
}

/// `Σ c·char(S)` with coefficients in `R((X))` (Fourier transforms introduce X).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleFunction {
    pub terms: Vec<(LaurentValue, MeasSet)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureMode {
    Additive,
    Multiplicative,
}

impl SimpleFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn char_of(s: MeasSet) -> Self {
        Self {
            terms: vec![(LaurentValue::one(), s)],
        }
    }

    pub fn with(mut self, c: LaurentValue, s: MeasSet) -> Self {
        self.terms.push((c, s));
        self
    }

    pub fn with_rat(self, c: Rat, s: MeasSet) -> Self {
        self.with(LaurentValue::from_rat(c), s)
    }

    /// Coefficient of each box indicator; two functions are equal exactly
    /// when these maps agree.
    pub fn box_coefficients(&self) -> Result<BTreeMap<(i64, i64), LaurentValue>> {
        let mut out: BTreeMap<(i64, i64), LaurentValue> = BTreeMap::new();
        for (c, s) in &self.terms {
            for (sign, b) in &s.terms {
                if b.shift.is_some() {
                    return Err(Error::UnsupportedShift);
                }
                let v = if *sign > 0 { c.clone() } else { -c };
                let slot = out.entry((b.i, b.j)).or_default();
                *slot = &*slot + &v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

fn box_measure(f: &Local2DField, b: &BoxSet) -> Result<LaurentValue> {
    let q = f.residue_q()?;
    let c = QHalfCoeff::term(f.d - 2 * b.j, Rat::one()).specialize(q);
    Ok(LaurentValue::monomial(b.i, c))
}

/// `μ(t₂^i t₁^j O_F) = X^i q^{−j} q^{d/2}`, extended additively.
pub fn measure_additive(f: &Local2DField, s: &MeasSet) -> Result<LaurentValue> {
    let mut acc = LaurentValue::zero();
    for piece in s.normalize()? {
        let v = match piece {
            Piece::Whole(b) => box_measure(f, &b)?,
            Piece::Annulus { outer, inner } => &box_measure(f, &outer)? - &box_measure(f, &inner)?,
        };
        acc = &acc + &v;
    }
    Ok(acc)
}

/// Multiplicative Haar measure, `μ×(t₂^i t₁^j O_F^×) = q^{d/2}`.
pub fn measure_multiplicative(f: &Local2DField, s: &MeasSet) -> Result<LaurentValue> {
    let q = f.residue_q()?;
    let unit = QHalfCoeff::q_half_pow(f.d).specialize(q);
    let mut count = 0i64;
    for piece in s.normalize()? {
        match piece {
            Piece::Annulus { outer, inner } if outer.i == inner.i => count += inner.j - outer.j,
            Piece::Annulus { outer, .. } => {
                return Err(Error::NotUnitCosets(format!(
                    "region below t2^{} t1^{} O meets infinitely many unit cosets",
                    outer.i, outer.j
                )))
            }
            Piece::Whole(b) => {
                return Err(Error::NotUnitCosets(format!(
                    "t2^{} t1^{} O contains 0",
                    b.i, b.j
                )))
            }
        }
    }
    Ok(LaurentValue::constant(unit.scale(&crate::exact::rint(count))))
}

pub fn integrate_simple(
    f: &Local2DField,
    func: &SimpleFunction,
    mode: MeasureMode,
) -> Result<LaurentValue> {
    let q = f.residue_q()?;
    let mut acc = LaurentValue::zero();
    for (c, s) in &func.terms {
        let m = match mode {
            MeasureMode::Additive => measure_additive(f, s)?,
            MeasureMode::Multiplicative => measure_multiplicative(f, s)?,
        };
        acc = &acc + &(c * &m).specialize(q);
    }
    Ok(acc)
}

/// Fourier transform of a combination of shift-free boxes:
/// `char(B) ↦ μ(B)·char(B^⊥)`.
pub fn fourier_box(f: &Local2DField, func: &SimpleFunction) -> Result<SimpleFunction> {
    let q = f.residue_q()?;
    let mut out = SimpleFunction::new();
    for ((i, j), c) in func.box_coefficients()? {
        let b = BoxSet::new(i, j);
        let mu = box_measure(f, &b)?;
        out.terms.push(((&c * &mu).specialize(q), MeasSet::boxed(b.dual(f.d))));
    }
    Ok(out)
}
