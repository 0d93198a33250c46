//! Exact and high-precision machinery for deriving and certifying algebraic
//! transformations of Gauss hypergeometric functions.
//!
//! The crate is organised around the pipeline used to produce such identities:
//! - [`algebra`]: exact scalars (rationals, quadratic field elements,
//!   arbitrary-precision complex values), polynomials, rational functions and
//!   truncated fractional-exponent power series
//! - [`hypergeom`]: Pochhammer symbols, the 2F1 series, point evaluation and
//!   the hypergeometric differential operator
//! - [`schwarzian`]: construction of the rational coefficient Q(t) of the
//!   second-order ODE f'' + Q f = 0 from elliptic-point data, Frobenius series
//!   solutions, and automorphic derivatives of rational maps
//! - [`forms`]: dimension formula and series bases for automorphic forms on
//!   genus-zero curves
//! - [`covers`]: ramification analysis, Belyi checks and an exact
//!   coefficient-matching solver for rational covers
//! - [`signatures`]: covolumes and enumeration of feasible subgroup signatures
//!   under finite-index coverings
//! - [`verify`]: declarative transformation identities with exact-series,
//!   numeric and shared-ODE certification backends

pub mod algebra;
pub mod covers;
pub mod forms;
pub mod hypergeom;
pub mod schwarzian;
pub mod signatures;
pub mod verify;
