//! Archimedean numerics: completed Dedekind zeta functions, the Tate
//! decomposition, inverse-Mellin boundary functions and mean-periodicity
//! diagnostics.

pub mod special;
pub mod dedekind;
pub mod meanper;
pub mod mellin;
pub mod tate;

pub use dedekind::{dedekind_xi, CompletedZeta, DedekindTag};
pub use meanper::{meanper_diagnostic, LogGrid, MeanPerReport};
pub use mellin::{ContourParams, Estimate, InverseMellin};
pub use tate::{tate_decompose, TateDecomposition};
