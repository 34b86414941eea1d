use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::ExactPoly;
use super::BigRational;
use crate::error::{Error, Result};

/// Compute a rational literal for a simple real root of `p` inside
/// `(lo, hi)` to absolute accuracy `2^-bits`, by exact Newton iteration
/// seeded from bisection, with an interval sign-change verification of
/// the final bracket.
///
/// Used for the irrational constants that enter the closed-form example
/// families (e.g. `sqrt(2)` and the root of `5a^4 - 10a^2 + 1`).
pub fn rational_root_literal(
    p: &ExactPoly,
    lo: &BigRational,
    hi: &BigRational,
    bits: u32,
) -> Result<BigRational> {
    let sign_lo = p.eval(lo);
    let sign_hi = p.eval(hi);
    if sign_lo.is_zero() {
        return Ok(lo.clone());
    }
    if sign_hi.is_zero() {
        return Ok(hi.clone());
    }
    if sign_lo.is_positive() == sign_hi.is_positive() {
        return Err(Error::precondition(
            "bracket endpoints must straddle a sign change",
        ));
    }
    let dp = p.derivative();
    let two = BigRational::from_integer(2.into());
    let tol = BigRational::new(BigInt::from(1), BigInt::from(2).pow(bits));

    // A few bisection steps to make Newton safe.
    let (mut a, mut b) = (lo.clone(), hi.clone());
    for _ in 0..8 {
        let mid = (&a + &b) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return Ok(mid);
        }
        if v.is_positive() == sign_lo.is_positive() {
            a = mid;
        } else {
            b = mid;
        }
    }

    let mut x = (&a + &b) / &two;
    // Quadratic convergence: 2 extra rounds past the requested accuracy.
    let rounds = (bits as f64).log2().ceil() as u32 + 3;
    for _ in 0..rounds {
        let d = dp.eval(&x);
        if d.is_zero() {
            return Err(Error::precondition("Newton hit a critical point"));
        }
        let step = p.eval(&x) / d;
        x -= &step;
        // Round to a dyadic with ~2*bits fractional bits so the iterate
        // size stays bounded.
        x = round_dyadic(&x, 2 * bits);
        if step.abs() < tol {
            break;
        }
    }

    // Interval verification: p must change sign across [x - tol, x + tol].
    let lo_v = p.eval(&(&x - &tol));
    let hi_v = p.eval(&(&x + &tol));
    if lo_v.is_zero() || hi_v.is_zero() || lo_v.is_positive() != hi_v.is_positive() {
        Ok(x)
    } else {
        Err(Error::NonConvergence {
            worst_residual: f64::NAN,
        })
    }
}

fn round_dyadic(q: &BigRational, frac_bits: u32) -> BigRational {
    let scale = BigInt::from(2).pow(frac_bits);
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}
