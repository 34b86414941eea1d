use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::ExactPoly;
use super::BigRational;
use crate::error::{Error, Result};

/// Reduced rational function `num/den`: numerator and denominator are
/// exactly coprime and the denominator is monic, so equal functions have
/// equal representations. Degree is `max(deg num, deg den)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactRatFun {
    num: ExactPoly,
    den: ExactPoly,
}

impl ExactRatFun {
    /// Cancel the gcd and normalize the denominator monic. The result
    /// evaluates pointwise equal to `num/den` away from cancelled points.
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(ExactRatFun {
                num: ExactPoly::zero(),
                den: ExactPoly::one(),
            });
        }
        let g = ExactPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides num");
        let mut den = den.div_exact(&g).expect("gcd divides den");
        let lead = den.leading().expect("den nonzero").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(ExactRatFun { num, den })
    }

    pub fn from_poly(p: ExactPoly) -> Self {
        ExactRatFun {
            num: p,
            den: ExactPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(ExactPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(ExactPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(ExactPoly::constant(c))
    }

    /// The identity function `z`.
    pub fn var() -> Self {
        Self::from_poly(ExactPoly::var())
    }

    pub fn num(&self) -> &ExactPoly {
        &self.num
    }

    pub fn den(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Degree `d = max(deg num, deg den)`; 0 for the zero function.
    pub fn degree(&self) -> usize {
        self.num.deg_or_zero().max(self.den.deg_or_zero())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow_i(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.recip()?.pow_i(-k);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Nonnegative power (the `pow_k` operation).
    pub fn pow(&self, k: u32) -> Self {
        self.pow_i(k as i64).expect("nonnegative power")
    }

    /// Symbolic derivative by the quotient rule, re-normalized.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::new(num, den).expect("den^2 nonzero")
    }

    /// Precomposition with `z ↦ αz + β`, `α ≠ 0`.
    pub fn compose_linear(&self, alpha: &BigRational, beta: &BigRational) -> Result<Self> {
        let num = self.num.compose_linear(alpha, beta)?;
        let den = self.den.compose_linear(alpha, beta)?;
        Self::new(num, den)
    }

    /// Substitute `z ↦ 1/z`, exactly: for `p` of degree `n`,
    /// `p(1/z) = rev(p)(z)/z^n`.
    pub fn substitute_reciprocal(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let dn = self.num.deg_or_zero();
        let dd = self.den.deg_or_zero();
        let rn = self.num.reversed();
        let rd = self.den.reversed();
        // num(1/z)/den(1/z) = rev(num)·z^dd / (rev(den)·z^dn)
        let (num, den) = if dd >= dn {
            (
                &rn * &ExactPoly::monomial(BigRational::from_integer(1.into()), dd - dn),
                rd,
            )
        } else {
            (
                rn,
                &rd * &ExactPoly::monomial(BigRational::from_integer(1.into()), dn - dd),
            )
        };
        Self::new(num, den).expect("reversed denominator nonzero")
    }

    /// Exact evaluation; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn add_scalar(&self, c: &BigRational) -> Self {
        self + &Self::constant(c.clone())
    }
}

impl fmt::Debug for ExactRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRatFun[{}]", super::text::format_ratfun(self))
    }
}

impl fmt::Display for ExactRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_ratfun(self))
    }
}

impl Add for &ExactRatFun {
    type Output = ExactRatFun;
    fn add(self, rhs: &ExactRatFun) -> ExactRatFun {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        ExactRatFun::new(num, den).expect("product of nonzero dens")
    }
}

impl Sub for &ExactRatFun {
    type Output = ExactRatFun;
    fn sub(self, rhs: &ExactRatFun) -> ExactRatFun {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        ExactRatFun::new(num, den).expect("product of nonzero dens")
    }
}

impl Mul for &ExactRatFun {
    type Output = ExactRatFun;
    fn mul(self, rhs: &ExactRatFun) -> ExactRatFun {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        ExactRatFun::new(num, den).expect("product of nonzero dens")
    }
}

impl Div for &ExactRatFun {
    type Output = ExactRatFun;
    /// Panics when dividing by the zero function; use `recip` + `mul`
    /// for a fallible route.
    fn div(self, rhs: &ExactRatFun) -> ExactRatFun {
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        ExactRatFun::new(num, den).expect("division by zero function")
    }
}

impl Neg for &ExactRatFun {
    type Output = ExactRatFun;
    fn neg(self) -> ExactRatFun {
        ExactRatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
