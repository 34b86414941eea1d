//! Dyadic fixed-point multiprecision arithmetic.
//!
//! A value is `mant · 2^-scale` with a `BigInt` mantissa, so the integer
//! part is unbounded and the absolute resolution is `2^-scale`. All
//! operands in an expression must share one scale (root solving uses
//! `2 × precision_bits`, leaving ample guard bits below the requested
//! precision). The representation is exact under add/sub and rounds
//! once per mul/div/sqrt, which keeps Newton polishing deterministic
//! across runs and platforms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactalg::BigRational;

/// Multiprecision real with fixed binary scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpReal {
    mant: BigInt,
    scale: u32,
}

impl MpReal {
    pub fn zero(scale: u32) -> Self {
        MpReal {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn from_i64(v: i64, scale: u32) -> Self {
        MpReal {
            mant: BigInt::from(v) << scale,
            scale,
        }
    }

    /// Nearest dyadic to `q`.
    pub fn from_rational(q: &BigRational, scale: u32) -> Self {
        let shifted = q.numer() << scale;
        MpReal {
            mant: div_round(&shifted, q.denom()),
            scale,
        }
    }

    /// Nearest dyadic to a finite `f64`.
    pub fn from_f64(x: f64, scale: u32) -> Self {
        debug_assert!(x.is_finite());
        let q = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Self::from_rational(&q, scale)
    }

    /// `2^k` at the given scale (`k` may be negative down to `-scale`).
    pub fn two_pow(k: i64, scale: u32) -> Self {
        let shift = k + scale as i64;
        MpReal {
            mant: if shift < 0 {
                BigInt::zero()
            } else {
                BigInt::from(1) << (shift as u64)
            },
            scale,
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = bits - 54;
        let (top, exp) = if shift > 0 {
            (&self.mant >> (shift as u64), shift)
        } else {
            (self.mant.clone(), 0)
        };
        let t = top.to_f64().expect("54-bit mantissa fits f64");
        t * 2f64.powi((exp - self.scale as i64) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::from(1) << self.scale)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.scale, rhs.scale);
        MpReal {
            mant: &self.mant + &rhs.mant,
            scale: self.scale,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.scale, rhs.scale);
        MpReal {
            mant: &self.mant - &rhs.mant,
            scale: self.scale,
        }
    }

    pub fn neg(&self) -> Self {
        MpReal {
            mant: -&self.mant,
            scale: self.scale,
        }
    }

    pub fn abs(&self) -> Self {
        MpReal {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.scale, rhs.scale);
        let prod = &self.mant * &rhs.mant;
        MpReal {
            mant: shr_round(prod, self.scale),
            scale: self.scale,
        }
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        debug_assert_eq!(self.scale, rhs.scale);
        if rhs.mant.is_zero() {
            return None;
        }
        let num = &self.mant << self.scale;
        Some(MpReal {
            mant: div_round(&num, &rhs.mant),
            scale: self.scale,
        })
    }

    /// Floor square root of a non-negative value.
    pub fn sqrt(&self) -> Option<Self> {
        if self.mant.is_negative() {
            return None;
        }
        let shifted = &self.mant << self.scale;
        Some(MpReal {
            mant: shifted.sqrt(),
            scale: self.scale,
        })
    }

    pub fn cmp_val(&self, rhs: &Self) -> Ordering {
        debug_assert_eq!(self.scale, rhs.scale);
        self.mant.cmp(&rhs.mant)
    }

    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        self.mant.abs().cmp(&rhs.mant.abs())
    }

    pub(crate) fn mant(&self) -> &BigInt {
        &self.mant
    }
}

/// Truncating-toward-even-free rounding shift: nearest, ties away from zero.
fn shr_round(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    let half = BigInt::from(1) << (s - 1);
    if x.is_negative() {
        -((-x + half) >> s)
    } else {
        (x + half) >> s
    }
}

/// Nearest integer to `n/d`, ties away from zero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let r2: BigInt = r.abs() * 2;
    if r2 >= d.abs() {
        let bump = if n.is_negative() == d.is_negative() {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        };
        q + bump
    } else {
        q
    }
}

/// Multiprecision complex value in rectangular form. A distinct tagged
/// point at infinity is represented where needed by the enclosing type
/// (see `petals::Location`), not here: arithmetic stays finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpComplex {
    pub re: MpReal,
    pub im: MpReal,
}

impl MpComplex {
    pub fn new(re: MpReal, im: MpReal) -> Self {
        debug_assert_eq!(re.scale(), im.scale());
        MpComplex { re, im }
    }

    pub fn zero(scale: u32) -> Self {
        MpComplex {
            re: MpReal::zero(scale),
            im: MpReal::zero(scale),
        }
    }

    pub fn from_real_rational(q: &BigRational, scale: u32) -> Self {
        MpComplex {
            re: MpReal::from_rational(q, scale),
            im: MpReal::zero(scale),
        }
    }

    pub fn from_f64(re: f64, im: f64, scale: u32) -> Self {
        MpComplex {
            re: MpReal::from_f64(re, scale),
            im: MpReal::from_f64(im, scale),
        }
    }

    pub fn scale(&self) -> u32 {
        self.re.scale()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        MpComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        MpComplex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        MpComplex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        MpComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&rhs.conj());
        Some(MpComplex {
            re: num.re.div(&n)?,
            im: num.im.div(&n)?,
        })
    }

    pub fn scale_real(&self, s: &MpReal) -> Self {
        MpComplex {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    pub fn norm_sqr(&self) -> MpReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> MpReal {
        self.norm_sqr().sqrt().expect("norm_sqr is non-negative")
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Argument in `[0, 2π)`, computed after a common scaling shift so
    /// huge or tiny mantissas do not overflow the `f64` conversion.
    pub fn arg(&self) -> f64 {
        let re_bits = self.re.mant().bits() as i64;
        let im_bits = self.im.mant().bits() as i64;
        let top = re_bits.max(im_bits);
        let shift = (top - 53).max(0) as u64;
        let re = (self.re.mant() >> shift).to_f64().unwrap_or(0.0);
        let im = (self.im.mant() >> shift).to_f64().unwrap_or(0.0);
        let a = im.atan2(re);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }
}

/// Rational to `f64` robustly: shifts numerator and denominator into
/// `f64` range independently, so huge-but-balanced fractions convert to
/// a finite value instead of `inf/inf`.
pub fn rat_to_f64(q: &BigRational) -> f64 {
    if q.numer().is_zero() {
        return 0.0;
    }
    let ns = (q.numer().bits() as i64 - 60).max(0) as u64;
    let ds = (q.denom().bits() as i64 - 60).max(0) as u64;
    let n = (q.numer() >> ns).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> ds).to_f64().unwrap_or(1.0);
    let exp = ns as i64 - ds as i64;
    (n / d) * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Evaluate an exact polynomial at a multiprecision complex point.
pub fn eval_poly(p: &crate::exactalg::ExactPoly, z: &MpComplex) -> MpComplex {
    let scale = z.scale();
    let mut acc = MpComplex::zero(scale);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re = acc.re.add(&MpReal::from_rational(c, scale));
    }
    acc
}

/// Evaluate a reduced rational function at a multiprecision point.
/// `None` at (numerically exact) poles.
pub fn eval_ratfun(f: &crate::exactalg::ExactRatFun, z: &MpComplex) -> Option<MpComplex> {
    let den = eval_poly(f.den(), z);
    eval_poly(f.num(), z).div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio, ExactPoly};

    const S: u32 = 128;

    #[test]
    fn arithmetic_round_trip() {
        let a = MpReal::from_rational(&ratio(1, 3), S);
        let b = MpReal::from_rational(&ratio(3, 1), S);
        let prod = a.mul(&b);
        // 1/3 * 3 = 1 within 2 ulps
        let one = MpReal::from_i64(1, S);
        let err = prod.sub(&one).abs();
        assert!(err.cmp_val(&MpReal::two_pow(-(S as i64) + 2, S)) != Ordering::Greater);
    }

    #[test]
    fn sqrt_of_two() {
        let two = MpReal::from_i64(2, S);
        let r = two.sqrt().unwrap();
        let back = r.mul(&r);
        let err = back.sub(&two).abs();
        assert!(err.cmp_val(&MpReal::two_pow(-(S as i64) + 4, S)) == Ordering::Less);
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn complex_division() {
        let z = MpComplex::from_f64(1.0, 2.0, S);
        let w = MpComplex::from_f64(3.0, -1.0, S);
        let q = z.mul(&w).div(&w).unwrap();
        let (re, im) = q.sub(&z).to_f64_pair();
        assert!(re.abs() < 1e-30 && im.abs() < 1e-30);
    }

    #[test]
    fn eval_exact_polynomial() {
        let p = ExactPoly::from_i64(&[-2, 0, 1]); // z^2 - 2
        let z = MpComplex::from_real_rational(&rat(3), S);
        let v = eval_poly(&p, &z);
        assert_eq!(v.re.to_f64(), 7.0);
        assert!(v.im.is_zero());
    }

    #[test]
    fn arg_quadrants() {
        let z = MpComplex::from_f64(0.0, 1.0, S);
        assert!((z.arg() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let z = MpComplex::from_f64(-1.0, 0.0, S);
        assert!((z.arg() - std::f64::consts::PI).abs() < 1e-12);
        let z = MpComplex::from_f64(1.0, -1.0, S);
        assert!((z.arg() - 7.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn huge_values_convert_without_overflow() {
        let big = MpReal::from_rational(&rat(10).pow(300), S);
        let sq = big.mul(&big);
        assert!(sq.to_f64().is_infinite());
        let z = MpComplex::new(sq.clone(), sq);
        let a = z.arg();
        assert!((a - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }
}
