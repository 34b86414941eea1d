use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BigRational;
use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial gets a distinct marker
/// instead of `-1` arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial with exact rational coefficients, stored
/// in ascending degree order. The leading coefficient is nonzero unless
/// the coefficient list is empty (the zero polynomial).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

/// One factor of a square-free decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeFactor {
    pub factor: ExactPoly,
    pub multiplicity: u32,
}

impl ExactPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `c·z^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        ExactPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    /// Degree as a count usable in bound formulas; zero polynomial is
    /// rejected by callers that care.
    pub fn deg_or_zero(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(αz + β)`, exact. Requires `α ≠ 0` so that degree is preserved.
    pub fn compose_linear(&self, alpha: &BigRational, beta: &BigRational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::precondition("compose_linear requires alpha != 0"));
        }
        let lin = Self::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        Ok(acc)
    }

    /// Coefficients in reverse order: `rev(p)(z) = z^deg · p(1/z)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient·div + remainder` and `deg rem < deg div`.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = div.coeffs.len() - 1;
        let lead_inv = div.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if !q.is_zero() {
                for j in 0..dd {
                    let delta = &q * &div.coeffs[j];
                    rem[k - dd + j] -= delta;
                }
            }
            rem[k] = BigRational::zero();
            quot[k - dd] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(div).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, div: &Self) -> Result<Self> {
        Ok(self.div_rem(div)?.1)
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Divides out the positive rational content, leaving integer
    /// coefficients with gcd 1. The sign of every coefficient is
    /// preserved, which is what the Sturm chain relies on.
    pub fn primitive_positive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        // content = numer_gcd / denom_lcm, both positive
        let factor = BigRational::new(denom_lcm, numer_gcd);
        self.scale(&factor)
    }

    /// Monic gcd via the Euclidean remainder sequence, with primitive
    /// normalization at each step to keep coefficient growth down.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.primitive_positive();
        let mut b = b.primitive_positive();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor").primitive_positive();
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `p / gcd(p, p')` — same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(self.make_monic());
        }
        let g = Self::gcd(self, &self.derivative());
        Ok(self
            .div_exact(&g)
            .expect("gcd divides")
            .make_monic())
    }

    /// Yun's square-free decomposition. Factors are monic, pairwise
    /// coprime and square-free; the product of `factor^multiplicity`
    /// recovers the input up to a nonzero constant.
    pub fn squarefree_decompose(&self) -> Result<Vec<SquarefreeFactor>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let a = self.make_monic();
        let da = a.derivative();
        let g = Self::gcd(&a, &da);
        let mut out = Vec::new();
        if g.is_constant() {
            out.push(SquarefreeFactor {
                factor: a,
                multiplicity: 1,
            });
            return Ok(out);
        }
        let mut b = a.div_exact(&g).expect("gcd divides");
        let c = da.div_exact(&g).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut mult = 1u32;
        while !b.is_constant() {
            let f = Self::gcd(&b, &d);
            if !f.is_constant() {
                out.push(SquarefreeFactor {
                    factor: f.clone(),
                    multiplicity: mult,
                });
            }
            b = b.div_exact(&f).expect("factor divides");
            let c2 = d.div_exact(&f).expect("factor divides");
            d = &c2 - &b.derivative();
            mult += 1;
        }
        Ok(out)
    }

    /// Cauchy root bound: every complex root has modulus `< 1 + max|a_i/a_n|`.
    pub fn root_bound(&self) -> BigRational {
        let Some(lead) = self.leading() else {
            return BigRational::one();
        };
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c / lead).abs();
            if q > m {
                m = q;
            }
        }
        m + BigRational::one()
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly[{}]", super::text::format_poly(self))
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_poly(self))
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        ExactPoly::from_coeffs(coeffs)
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        ExactPoly::from_coeffs(coeffs)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ExactPoly::from_coeffs(coeffs)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    fn p(coeffs: &[i64]) -> ExactPoly {
        ExactPoly::from_i64(coeffs)
    }

    #[test]
    fn degree_of_zero_is_minus_infinity() {
        assert_eq!(ExactPoly::zero().degree(), Degree::MinusInfinity);
        assert_eq!(p(&[0, 0, 0]).degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[-1, 0, 0, 1]); // z^3 - 1
        let b = p(&[-1, 1]); // z - 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());

        let a = p(&[1, 1, 0, 1]);
        let b = p(&[1, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = p(&[-1, 0, 1]); // (z-1)(z+1)
        let b = p(&[0, -1, 1]); // z(z-1)
        assert_eq!(ExactPoly::gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_decompose_examples() {
        // z^3 (z-1) -> [(z,3),(z-1,1)]
        let input = &p(&[0, 1]).pow(3) * &p(&[-1, 1]);
        let mut got = input.squarefree_decompose().unwrap();
        got.sort_by_key(|f| f.multiplicity);
        assert_eq!(
            got,
            vec![
                SquarefreeFactor {
                    factor: p(&[-1, 1]),
                    multiplicity: 1
                },
                SquarefreeFactor {
                    factor: p(&[0, 1]),
                    multiplicity: 3
                },
            ]
        );

        // z^2 - 1 is already square-free
        let got = p(&[-1, 0, 1]).squarefree_decompose().unwrap();
        assert_eq!(
            got,
            vec![SquarefreeFactor {
                factor: p(&[-1, 0, 1]),
                multiplicity: 1
            }]
        );

        // (z^2+1)^2 z -> [(z,1),(z^2+1,2)]
        let input = &p(&[1, 0, 1]).pow(2) * &p(&[0, 1]);
        let mut got = input.squarefree_decompose().unwrap();
        got.sort_by_key(|f| f.multiplicity);
        assert_eq!(
            got,
            vec![
                SquarefreeFactor {
                    factor: p(&[0, 1]),
                    multiplicity: 1
                },
                SquarefreeFactor {
                    factor: p(&[1, 0, 1]),
                    multiplicity: 2
                },
            ]
        );
    }

    #[test]
    fn compose_linear_halves_variable() {
        let f = ExactPoly::var();
        let g = f.compose_linear(&ratio(1, 2), &rat(0)).unwrap();
        assert_eq!(g, ExactPoly::from_coeffs(vec![rat(0), ratio(1, 2)]));
    }

    #[test]
    fn primitive_positive_preserves_signs() {
        let q = ExactPoly::from_coeffs(vec![ratio(-2, 3), ratio(4, 9)]);
        let prim = q.primitive_positive();
        assert_eq!(prim, p(&[-3, 2]));
    }

    #[test]
    fn eval_horner() {
        let f = p(&[2, 8, -16]); // -16z^2 + 8z + 2
        assert_eq!(f.eval(&rat(1)), rat(-6));
        assert_eq!(f.eval(&ratio(1, 2)), rat(2));
    }
}
