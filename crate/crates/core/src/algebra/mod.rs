//! Exact scalar arithmetic and truncated power series.
//!
//! The scalar tower is `Rational ⊂ QuadExt(d) ⊂ ComplexApprox`: exact
//! rationals, exact elements of a quadratic field Q(√d), and dyadic
//! floating-point complex numbers carrying an explicit precision. Promotion is
//! one-way; exact structures (polynomials, rational functions, series) are
//! built over [`QuadExt`], which embeds the rationals as its `y = 0` slice.

pub mod bigfloat;
pub mod complexval;
pub mod linalg;
pub mod poly;
pub mod quad;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use bigfloat::BigFloat;
pub use complexval::ComplexApprox;
pub use poly::Poly;
pub use quad::QuadExt;
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use series::FracSeries;

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("incompatible scalar fields: sqrt({0}) vs sqrt({1})")]
    IncompatibleFields(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("zero series raised to non-positive power")]
    ZeroSeriesPower,
    #[error("series has no constant term to invert")]
    NonUnitSeries,
    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,
    #[error("exact {1}-th root of {0} does not exist in the field")]
    NoExactRoot(String, u32),
    #[error("malformed scalar literal: {0}")]
    Parse(String),
}
