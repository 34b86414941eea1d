//! Exact arithmetic substrate.
//!
//! Coefficients are arbitrary-precision rationals throughout; floating
//! point never enters this module. The bound theorems this crate checks
//! are statements about integer counts, so the oracle layer has to be
//! exact — Sturm chains, GCDs, and square-free splits all run over
//! [`BigRational`].

mod newton;
mod poly;
mod ratfun;
mod sturm;
pub mod text;

pub use newton::rational_root_literal;
pub use poly::{Degree, ExactPoly, SquarefreeFactor};
pub use ratfun::ExactRatFun;
pub use sturm::{distinct_real_roots as sturm_distinct_real_roots, isolate_real_roots};
pub use sturm::{IsolatedRoot, SturmChain};

/// Arbitrary-precision rational: reduced, positive denominator,
/// canonical zero `0/1`. These invariants are maintained by the
/// underlying `num-rational` representation.
pub type BigRational = num_rational::BigRational;

use num_bigint::BigInt;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
