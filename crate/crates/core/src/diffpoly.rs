//! Builders for the differential polynomials `f' + f^m + c` and
//! `g^n g' − c`, exact verifiers for the transform identities that relate
//! them, and the tangent-conjugate reduction that turns `R(tan bz)`
//! families into polynomial root problems in `t = tan bz`.
//!
//! Identity verification is by exact [`ExactRatFun`] equality after
//! normalization, never by sampled evaluation.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, ExactPoly, ExactRatFun};

/// `f' + f^m + c`, exact and normalized.
pub fn hayman_expr(f: &ExactRatFun, m: u32, c: &BigRational) -> Result<ExactRatFun> {
    if m < 1 {
        return Err(Error::precondition("hayman_expr requires m >= 1"));
    }
    let sum = &f.derivative() + &f.pow(m);
    Ok(sum.add_scalar(c))
}

/// `g^n · g' − c`, exact and normalized. Zeros of the result are the
/// solutions of `g^n g' = c`.
pub fn product_expr(g: &ExactRatFun, n: u32, c: &BigRational) -> Result<ExactRatFun> {
    if n < 1 {
        return Err(Error::precondition("product_expr requires n >= 1"));
    }
    let prod = &g.pow(n) * &g.derivative();
    Ok(prod.add_scalar(&-c.clone()))
}

/// Verify `g' + g^2 = f(w)^{m-2} (f'(w) + f(w)^m)` for
/// `g(z) = f(w)^{m-1}`, `w = z/(m-1)`, as an exact identity.
pub fn verify_sheilsmall_transform(f: &ExactRatFun, m: u32) -> Result<bool> {
    if m < 2 {
        return Err(Error::precondition(
            "sheil-small transform requires m >= 2",
        ));
    }
    let alpha = BigRational::new(1.into(), (m as i64 - 1).into());
    let zero = BigRational::zero();
    let fw = f.compose_linear(&alpha, &zero)?;
    let fpw = f.derivative().compose_linear(&alpha, &zero)?;
    let g = fw.pow(m - 1);
    let lhs = &g.derivative() + &g.pow(2);
    let rhs = &fw.pow(m - 2) * &(&fpw + &fw.pow(m));
    Ok(lhs == rhs)
}

/// Verify the inversion identity
/// `f'(w) + f(w)^m = c^{-1} g(z)^{-m} (c − g(z)^{m-2} g'(z))`
/// with `g(z) = 1/f(w)`, `w = cz`, as an exact identity. `f` is
/// reconstructed from `g` through the stated substitution.
pub fn verify_inversion_identity(g: &ExactRatFun, m: u32, c: &BigRational) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::precondition("inversion identity requires c != 0"));
    }
    if m < 2 {
        return Err(Error::precondition("inversion identity requires m >= 2"));
    }
    if g.is_zero() {
        return Err(Error::precondition("g must not be identically 0"));
    }
    let zero = BigRational::zero();
    // f(u) = 1/g(u/c), so that g(z) = 1/f(cz).
    let f = g.compose_linear(&c.recip(), &zero)?.recip()?;
    let fw = f.compose_linear(c, &zero)?;
    let fpw = f.derivative().compose_linear(c, &zero)?;
    let lhs = &fpw + &fw.pow(m);
    let inner = &ExactRatFun::constant(c.clone()) - &(&g.pow(m - 2) * &g.derivative());
    let rhs = &(&ExactRatFun::constant(c.recip()) * &g.pow_i(-(m as i64))?) * &inner;
    Ok(lhs == rhs)
}

/// Result of the `g = (f'+c)/f^m` construction.
#[derive(Clone, Debug)]
pub struct Tc0 {
    pub g: ExactRatFun,
    pub h: ExactRatFun,
    /// True iff `(f'+c)/G = g/(g+1)` and `f'' − (G'/G)(f'+c) = f^m H`
    /// hold exactly, with `G = f' + f^m + c`.
    pub checks: bool,
}

/// Build `g = (f'+c)/f^m` and `H = g'/(g+1)` and verify the identity
/// chain linking them to `G = f' + f^m + c`.
///
/// The bound statement needs `m >= 3`; `m = 2` is accepted for
/// diagnostic use (the identities hold regardless).
pub fn tc0_construct(f: &ExactRatFun, m: u32, c: &BigRational) -> Result<Tc0> {
    if c.is_zero() {
        return Err(Error::precondition("tc0 requires c != 0"));
    }
    if m < 2 {
        return Err(Error::precondition("tc0 requires m >= 2"));
    }
    if f.is_constant() {
        return Err(Error::precondition("tc0 requires non-constant f"));
    }
    let fp_plus_c = f.derivative().add_scalar(c);
    if fp_plus_c.is_zero() {
        return Err(Error::precondition("tc0 requires f' not identically -c"));
    }
    let g = &fp_plus_c / &f.pow(m);
    if g.is_constant() {
        let minus_one = ExactRatFun::constant(-BigRational::one());
        return Err(if g == minus_one {
            Error::DegenerateGMinusOne
        } else {
            Error::DegenerateGConstant
        });
    }
    let big_g = hayman_expr(f, m, c)?;
    if big_g.is_zero() {
        return Err(Error::ExpressionVanishes);
    }
    let g_plus_1 = g.add_scalar(&BigRational::one());
    let h = &g.derivative() / &g_plus_1;

    let check1 = &fp_plus_c / &big_g == &g / &g_plus_1;
    let second_deriv = f.derivative().derivative();
    let lhs = &second_deriv - &(&(&big_g.derivative() / &big_g) * &fp_plus_c);
    let rhs = &f.pow(m) * &h;
    let check2 = lhs == rhs;

    Ok(Tc0 {
        g,
        h,
        checks: check1 && check2,
    })
}

/// A real meromorphic function of the form `f(z) = R(tan(bz))` with
/// rational outer function `R` and rational frequency `b != 0`.
///
/// Since `tan` is odd, families written in the variable `t = −tan(βz)`
/// are represented here with frequency `b = −β`.
#[derive(Clone, Debug, PartialEq)]
pub struct TanFun {
    outer: ExactRatFun,
    frequency: BigRational,
}

impl TanFun {
    pub fn new(outer: ExactRatFun, frequency: BigRational) -> Result<Self> {
        if frequency.is_zero() {
            return Err(Error::precondition("tan frequency must be nonzero"));
        }
        Ok(TanFun { outer, frequency })
    }

    pub fn outer(&self) -> &ExactRatFun {
        &self.outer
    }

    pub fn frequency(&self) -> &BigRational {
        &self.frequency
    }

    /// Parse `"R = <ratfun> ; b = <rational>"`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::parse(0, "expected \"R = <ratfun> ; b = <rational>\"".to_string());
        let (r_part, b_part) = s.rsplit_once(';').ok_or_else(err)?;
        let b_part = b_part.trim();
        let r_part = r_part.trim();
        let b_str = b_part.strip_prefix("b").ok_or_else(err)?.trim_start();
        let b_str = b_str.strip_prefix('=').ok_or_else(err)?;
        let r_str = r_part.strip_prefix("R").ok_or_else(err)?.trim_start();
        let r_str = r_str.strip_prefix('=').ok_or_else(err)?;
        let outer = crate::exactalg::text::parse_ratfun(r_str)?;
        let frequency = crate::exactalg::text::parse_rational(b_str)?;
        TanFun::new(outer, frequency)
    }
}

/// Which differential polynomial to reduce.
#[derive(Clone, Debug)]
pub enum TanMode {
    /// `f' + f^m + c`
    Hayman { m: u32, c: BigRational },
    /// `g^n g' − c`
    Product { n: u32, c: BigRational },
}

/// The polynomial in `t = tan(bz)` whose roots describe the zeros of a
/// reduced tan-family expression. The points `t = ±i` are omitted by
/// `tan`, so roots of `t^2 + 1` correspond to no `z` at all; real roots
/// `t` correspond to one real `z` per period, and non-real roots other
/// than `±i` to non-real `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTanPoly {
    poly: ExactPoly,
    den: ExactPoly,
}

/// Zero counts of a reduced tan-family expression, with the `t = ±i`
/// exclusion applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TanZeroCounts {
    /// Expression is a nonzero constant: no zeros at all.
    pub constant_nonzero: bool,
    /// Distinct real roots in `t` (each giving infinitely many real `z`).
    pub real_distinct: usize,
    /// Distinct non-real roots other than `±i`.
    pub nonreal_distinct: usize,
    /// Multiplicity of the excluded factor `t^2 + 1`.
    pub excluded_unit_multiplicity: u32,
}

impl ReducedTanPoly {
    pub fn poly(&self) -> &ExactPoly {
        &self.poly
    }

    /// Denominator of the reduced expression: the full value at `t` is
    /// `poly(t)/den(t)`. Kept for numeric cross-checks; the zero
    /// accounting only ever needs `poly`.
    pub fn den(&self) -> &ExactPoly {
        &self.den
    }

    /// Strip `t^2+1` factors and count distinct real / non-real roots
    /// exactly (Sturm on the square-free part).
    pub fn counts(&self) -> Result<TanZeroCounts> {
        if self.poly.is_constant() {
            return Ok(TanZeroCounts {
                constant_nonzero: true,
                real_distinct: 0,
                nonreal_distinct: 0,
                excluded_unit_multiplicity: 0,
            });
        }
        let unit = ExactPoly::from_i64(&[1, 0, 1]);
        let mut stripped = self.poly.clone();
        let mut excluded = 0u32;
        while let Some(q) = stripped.div_exact(&unit) {
            stripped = q;
            excluded += 1;
        }
        if stripped.is_constant() {
            return Ok(TanZeroCounts {
                constant_nonzero: false,
                real_distinct: 0,
                nonreal_distinct: 0,
                excluded_unit_multiplicity: excluded,
            });
        }
        let sf = stripped.squarefree_part()?;
        let real = crate::exactalg::sturm_distinct_real_roots(&stripped, None)?;
        let total = sf.deg_or_zero();
        Ok(TanZeroCounts {
            constant_nonzero: false,
            real_distinct: real,
            nonreal_distinct: total - real,
            excluded_unit_multiplicity: excluded,
        })
    }
}

/// Reduce a differential polynomial of `f(z) = R(tan bz)` to a
/// polynomial in `t`, using `f' = b·R'(t)·(1+t^2)`.
pub fn tan_reduce(f: &TanFun, mode: &TanMode) -> Result<ReducedTanPoly> {
    let unit = ExactRatFun::from_poly(ExactPoly::from_i64(&[1, 0, 1]));
    let b = ExactRatFun::constant(f.frequency.clone());
    let deriv = &(&b * &f.outer.derivative()) * &unit;
    let expr = match mode {
        TanMode::Hayman { m, c } => {
            if *m < 1 {
                return Err(Error::precondition("hayman mode requires m >= 1"));
            }
            (&deriv + &f.outer.pow(*m)).add_scalar(c)
        }
        TanMode::Product { n, c } => {
            if *n < 1 {
                return Err(Error::precondition("product mode requires n >= 1"));
            }
            let prod = &f.outer.pow(*n) * &deriv;
            prod.add_scalar(&-c.clone())
        }
    };
    if expr.is_zero() {
        return Err(Error::ExpressionVanishes);
    }
    Ok(ReducedTanPoly {
        poly: expr.num().clone(),
        den: expr.den().clone(),
    })
}

/// Equality of polynomials up to a nonzero constant factor.
pub fn proportional(a: &ExactPoly, b: &ExactPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    if a.degree() != b.degree() {
        return false;
    }
    let ratio = a.leading().unwrap() / b.leading().unwrap();
    *a == b.scale(&ratio)
}
