//! Two-dimensional local fields `K_{x,y}` described by residue data, their
//! monomial elements `t₂^i t₁^j u`, rank-2 valuation and `R((X))`-valued module.

use std::ops::Mul;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::exact::{rint, LaurentValue, QHalfCoeff, Rank2Val, Rat};
use crate::zeta2d::QsExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    /// `F_q((t₁))((t₂))` and its mixed-characteristic relatives.
    Eqchar,
    ArchReal,
    ArchComplex,
}

/// Residue data of a two-dimensional local field: kind, residue cardinality
/// `q` (nonarchimedean only) and the conductor exponent `d` of the character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Local2DField {
    pub kind: FieldKind,
    pub q: Option<u64>,
    pub d: i64,
}

impl Local2DField {
    pub fn eqchar(q: u64, d: i64) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::Validation(format!("q = {q} is not a prime power")));
        }
        Ok(Self {
            kind: FieldKind::Eqchar,
            q: Some(q),
            d,
        })
    }

    pub fn archimedean(complex: bool, d: i64) -> Self {
        Self {
            kind: if complex {
                FieldKind::ArchComplex
            } else {
                FieldKind::ArchReal
            },
            q: None,
            d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind, self.q) {
            (FieldKind::Eqchar, Some(q)) if prime_power(q).is_some() => Ok(()),
            (FieldKind::Eqchar, _) => Err(Error::Validation(
                "equal-characteristic field needs a prime power q".into(),
            )),
            (_, None) => Ok(()),
            (_, Some(_)) => Err(Error::Validation("archimedean field carries no q".into())),
        }
    }

    /// Residue cardinality, or an error for archimedean fields.
    pub fn residue_q(&self) -> Result<u64> {
        match (self.kind, self.q) {
            (FieldKind::Eqchar, Some(q)) => Ok(q),
            _ => Err(Error::Domain(
                "archimedean fields have no residue cardinality".into(),
            )),
        }
    }
}

/// Opaque label of a unit in `U`; units never affect modules or measures.
pub type UnitTag = u32;

/// A monomial element `t₂^i t₁^j u`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element2D {
    Zero,
    Monomial { i: i64, j: i64, unit: UnitTag },
}

impl Element2D {
    pub fn new(i: i64, j: i64) -> Self {
        Element2D::Monomial { i, j, unit: 0 }
    }

    pub fn with_unit(i: i64, j: i64, unit: UnitTag) -> Self {
        Element2D::Monomial { i, j, unit }
    }

    pub fn one() -> Self {
        Self::new(0, 0)
    }

    pub fn t1() -> Self {
        Self::new(0, 1)
    }

    pub fn t2() -> Self {
        Self::new(1, 0)
    }

    fn exponents(&self) -> Result<(i64, i64)> {
        match self {
            Element2D::Zero => Err(Error::ZeroElement),
            Element2D::Monomial { i, j, .. } => Ok((*i, *j)),
        }
    }
}

impl Mul for Element2D {
    type Output = Element2D;
    fn mul(self, rhs: Element2D) -> Element2D {
        match (self, rhs) {
            (
                Element2D::Monomial { i, j, unit },
                Element2D::Monomial {
                    i: i2,
                    j: j2,
                    unit: u2,
                },
            ) => Element2D::Monomial {
                i: i + i2,
                j: j + j2,
                unit: unit ^ u2,
            },
            _ => Element2D::Zero,
        }
    }
}

/// A closed point on a fibre: its local field and degree over the fibre's
/// base residue field, so `q(x) = q_𝔭^deg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointData {
    pub field: Local2DField,
    pub deg: u32,
}

impl PointData {
    pub fn new(field: Local2DField, deg: u32) -> Result<Self> {
        if deg == 0 {
            return Err(Error::Validation("point degree must be at least 1".into()));
        }
        field.validate()?;
        Ok(Self { field, deg })
    }
}

/// `(v₁, v₂) = (j, i)` for `t₂^i t₁^j u`.
pub fn rank2_valuation(e: &Element2D) -> Result<Rank2Val> {
    let (i, j) = e.exponents()?;
    Ok(Rank2Val::new(j, i))
}

/// `|t₂^i t₁^j u| = q^{−j}·X^i`.
pub fn module_value(f: &Local2DField, e: &Element2D) -> Result<LaurentValue> {
    let (i, j) = e.exponents()?;
    let q = f.residue_q()?;
    let c = QHalfCoeff::term(-2 * j, Rat::one()).specialize(q);
    Ok(LaurentValue::monomial(i, c))
}

/// `|t₂^i t₁^j u|^s = q^{−js}·X^{is}`.
pub fn module_power_symbolic(f: &Local2DField, e: &Element2D) -> Result<QsExpr> {
    let (i, j) = e.exponents()?;
    let q = f.residue_q()?;
    let qs = if j == 0 {
        QsExpr::one()
    } else {
        QsExpr::q_pow(q, rint(-j), rint(0))?
    };
    Ok(&qs * &QsExpr::x_pow(rint(i), rint(0)))
}
