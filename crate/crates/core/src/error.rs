use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("value needs q^(1/2) for a non-square q; use float evaluation")]
    NeedsFloat,
    #[error("valuation of zero is undefined")]
    ZeroElement,
    #[error("set algebra: {0}")]
    SetAlgebra(String),
    #[error("not a finite union of unit cosets: {0}")]
    NotUnitCosets(String),
    #[error("shifted boxes are not supported")]
    UnsupportedShift,
    #[error("invalid zeta numerator: {0}")]
    InvalidNumerator(String),
    #[error("closed point count a_{n} = {value} is not a non-negative integer")]
    ClosedPoints { n: usize, value: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("missing fibre data for residue cardinality {0}")]
    MissingFibre(u64),
    #[error("genus mismatch: fibre over {fibre} has arithmetic genus {found}, model genus {model}")]
    GenusMismatch { fibre: u64, model: i64, found: i64 },
    #[error("gamma product does not reduce to a monomial: {0}")]
    NotGammaFree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Domain,
    Validation,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Pole(_)
            | Error::NeedsFloat
            | Error::ZeroElement
            | Error::Domain(_)
            | Error::NotGammaFree(_)
            | Error::Overflow(_) => ErrorClass::Domain,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
