//! Minimal map-expression grammar: variable `z`, integer literals,
//! `+ - * / ^`, parentheses. `^` takes an integer exponent (negative
//! allowed) and binds tighter than unary minus; `/` is exact division,
//! so rational constants are written `1/3`. Everything parses to an
//! exact rational function.

use petalab_core::error::Error;
use petalab_core::exactalg::{BigRational, ExactRatFun};
use petalab_core::Result;

pub fn parse_map(input: &str) -> Result<ExactRatFun> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ExactRatFun> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactRatFun> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(Error::parse(at, "division by zero"));
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExactRatFun> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(-&inner)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExactRatFun> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let exp = self.integer()?;
            if base.is_zero() && exp < 0 {
                return Err(Error::parse(at, "zero to a negative power"));
            }
            return base.pow_i(exp);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExactRatFun> {
        match self.peek() {
            Some(b'z') | Some(b'Z') => {
                self.pos += 1;
                Ok(ExactRatFun::var())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ExactRatFun::constant(BigRational::from_integer(n.into())))
            }
            _ => Err(Error::parse(self.pos, "expected 'z', a number, or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut sign = 1i64;
        if self.bytes.get(self.pos) == Some(&b'-') {
            sign = -1;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.bytes[digits_start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map(|v| sign * v)
            .map_err(|e| Error::parse(start, format!("integer out of range: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use petalab_core::exactalg::text::parse_ratfun;

    #[test]
    fn parses_cubic_map() {
        assert_eq!(
            parse_map("z - z^3/3").unwrap(),
            parse_ratfun("0,1,0,-1/3").unwrap()
        );
    }

    #[test]
    fn parses_rational_map() {
        assert_eq!(
            parse_map("(z^2 - 1)/z").unwrap(),
            parse_ratfun("-1,0,1 ; 0,1").unwrap()
        );
        assert_eq!(parse_map("z^-1").unwrap(), parse_ratfun("1 ; 0,1").unwrap());
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(
            parse_map("-z^2 + 2*z").unwrap(),
            parse_ratfun("0,2,-1").unwrap()
        );
        assert_eq!(
            parse_map("1/3 * z").unwrap(),
            parse_ratfun("0,1/3").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_map("z +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("z ) z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("1/(z-z)"), Err(Error::Parse { .. })));
    }
}
