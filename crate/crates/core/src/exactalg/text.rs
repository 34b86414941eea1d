//! Text formats shared by the CLI and tests.
//!
//! Polynomial: comma-separated ascending coefficients, each an integer
//! or `p/q` — `"2,8,-16"` is `-16z^2 + 8z + 2`. Rational function:
//! `"num ; den"`, denominator optional.

use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::ExactPoly;
use super::ratfun::ExactRatFun;
use super::BigRational;
use crate::error::{Error, Result};

/// Parse an integer or `p/q` rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(0, "empty rational"));
    }
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s)
                .map_err(|e| Error::parse(0, format!("bad integer {s:?}: {e}")))?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim())
                .map_err(|e| Error::parse(0, format!("bad numerator {p:?}: {e}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|e| Error::parse(0, format!("bad denominator {q:?}: {e}")))?;
            if q == BigInt::from(0) {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Parse comma-separated ascending coefficients.
pub fn parse_poly(s: &str) -> Result<ExactPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut coeffs = Vec::new();
    let mut pos = 0;
    for part in s.split(',') {
        coeffs.push(parse_rational(part).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse(pos, msg),
            other => other,
        })?);
        pos += part.len() + 1;
    }
    Ok(ExactPoly::from_coeffs(coeffs))
}

/// Parse `num ; den` (or just `num` for a polynomial).
pub fn parse_ratfun(s: &str) -> Result<ExactRatFun> {
    match s.split_once(';') {
        None => Ok(ExactRatFun::from_poly(parse_poly(s)?)),
        Some((num, den)) => {
            let num = parse_poly(num)?;
            let den = parse_poly(den)?;
            ExactRatFun::new(num, den)
        }
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_poly(p: &ExactPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_ratfun(f: &ExactRatFun) -> String {
    if f.is_polynomial() {
        format_poly(f.num())
    } else {
        format!("{} ; {}", format_poly(f.num()), format_poly(f.den()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    #[test]
    fn parse_ascending_coefficients() {
        let p = parse_poly("2,8,-16").unwrap();
        assert_eq!(p.coeff(0), rat(2));
        assert_eq!(p.coeff(1), rat(8));
        assert_eq!(p.coeff(2), rat(-16));
        assert_eq!(format_poly(&p), "2,8,-16");
    }

    #[test]
    fn parse_fractions_and_spaces() {
        let p = parse_poly(" 1/2 , -3/4 ").unwrap();
        assert_eq!(p.coeff(0), ratio(1, 2));
        assert_eq!(p.coeff(1), ratio(-3, 4));
    }

    #[test]
    fn parse_ratfun_with_denominator() {
        let f = parse_ratfun("1 ; 0,1").unwrap(); // 1/z
        assert_eq!(f.degree(), 1);
        assert_eq!(format_ratfun(&f), "1 ; 0,1");
    }

    #[test]
    fn parse_errors_carry_position() {
        assert!(matches!(parse_poly("1,x,3"), Err(Error::Parse { .. })));
        assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
    }
}
