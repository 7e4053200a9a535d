//! Exact symbolic calculus for bracket-generating distributions.
//!
//! Everything runs over arbitrary-precision rationals: sparse multivariate
//! polynomials, rational-function vector fields and their Lie brackets,
//! derived flags and small growth vectors, symbol algebras, graded nilpotent
//! Lie algebras built from cubic forms, left-invariant flat models,
//! Legendrian cones with their fundamental forms, and the contact lift of a
//! distribution through the annihilator of its derived system.

pub mod algebra;
pub mod chart;
pub mod check;
pub mod cubic;
pub mod distribution;
pub mod error;
pub mod field;
pub mod flat;
pub mod gplus;
pub mod legendrian;
pub mod lift;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Version tag written into every serialized report and file format.
pub const SCHEMA_VERSION: &str = "1";
