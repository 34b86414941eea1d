//! Exact algebra and parabolic dynamics for differential polynomials of
//! real rational functions.
//!
//! The crate is organized around five subsystems:
//!
//! * [`exactalg`] — arbitrary-precision rational arithmetic: dense
//!   polynomials, reduced rational functions, exact GCD, square-free
//!   decomposition, and Sturm-sequence real-root counting (the exact
//!   oracle everything else is checked against).
//! * [`diffpoly`] — builders for the differential polynomials
//!   `f' + f^m + c` and `g^n g' − c`, exact verifiers for the transform
//!   identities relating them, and the tangent-conjugate reduction that
//!   turns `R(tan bz)` families into polynomial root problems.
//! * [`rootlab`] — multiprecision numeric root finding (square-free
//!   split, Aberth–Ehrlich iteration, Newton polishing), conjugate-pair
//!   classification, and the "not a zero of f" filter.
//! * [`theorems`] — executable checkers for the quantitative non-real
//!   zero bounds, the K/L/M/N/P zero census with its inequalities, and
//!   the Rolle interlacing property.
//! * [`petals`] — the parabolic-dynamics engine: auxiliary maps,
//!   multiple fixed points (finite and at infinity), predicted Leau
//!   petal access angles, and critical-orbit capture by iteration.

pub mod diffpoly;
pub mod error;
pub mod exactalg;
pub mod petals;
pub mod rootlab;
pub mod theorems;

pub use error::{Error, Result};
pub use exactalg::{BigRational, Degree, ExactPoly, ExactRatFun};
pub use rootlab::{MpComplex, MpReal, RootClass, RootSet};
