//! Symbolic and numeric computations for two-dimensional adelic analysis on
//! arithmetic surfaces: lifted `R((X))`-valued measures on two-dimensional
//! local fields, zeta integrals of fibred surfaces with their renormalizer and
//! gamma factors, Tate-style decompositions, and inverse-Mellin boundary
//! functions.

pub mod analytic;
pub mod arith;
pub mod error;
pub mod exact;
pub mod ffcurves;
pub mod fixtures;
pub mod gammafactor;
pub mod local2d;
pub mod measure2d;
pub mod schema;
pub mod surface;
pub mod zeta2d;

pub use error::{Error, ErrorClass, Result};
