//! Parser for field-element expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' signed-int)?
//! atom   := nat | nat '/' nat | 'q' | '(' expr ')' | '-' factor
//! ```
//!
//! A `nat '/' nat` pair is read as one rational literal, so `3/4^2` is
//! `(3/4)^2`. Division between arbitrary factors is also accepted, which is
//! what lets rendered `(num) / (den)` output parse back. Whitespace is
//! insignificant. Evaluation is exact throughout.

use num_bigint::BigInt;

use super::{FieldElem, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<FieldElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<FieldElem> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                acc = match acc.div(&d) {
                    Ok(v) => v,
                    Err(_) => {
                        self.pos = at;
                        return self.err("division by zero");
                    }
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> PResult<FieldElem> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.signed_int()?;
            return base.pow_int(e).or_else(|_| {
                self.pos = at;
                self.err("negative power of zero")
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<FieldElem> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(FieldElem::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                // nat '/' nat is a single rational literal
                let save = self.pos;
                if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let at = self.pos;
                    let d = self.nat()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    return Ok(FieldElem::from_rational(Rational::new(n, d)));
                }
                self.pos = save;
                Ok(FieldElem::from_rational(Rational::from_integer(n)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn nat(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let at = self.pos;
        let n = self.nat()?;
        let v: i64 = match i64::try_from(n) {
            Ok(v) => v,
            Err(_) => {
                self.pos = at;
                return self.err("exponent out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }
}

/// Parses an expression in `q` into its canonical field element.
pub fn parse_field_expr(text: &str) -> Result<FieldElem, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

impl std::str::FromStr for FieldElem {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_field_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Polynomial;

    fn poly(cs: &[i64]) -> FieldElem {
        FieldElem::from_poly(&Polynomial::from_i64s(cs))
    }

    #[test]
    fn monomial() {
        assert_eq!(parse_field_expr("q^2").unwrap(), poly(&[0, 0, 1]));
    }

    #[test]
    fn ratio() {
        let x = parse_field_expr("(1-q)/(1+q)").unwrap();
        assert_eq!(x, poly(&[1, -1]).div(&poly(&[1, 1])).unwrap());
    }

    #[test]
    fn rational_coefficient() {
        let x = parse_field_expr("3/4 * q + 1").unwrap();
        let want = Polynomial::new(vec![
            Rational::from_integer(1.into()),
            Rational::new(3.into(), 4.into()),
        ]);
        assert_eq!(x, FieldElem::from_poly(&want));
    }

    #[test]
    fn rational_literal_binds_before_power() {
        assert_eq!(
            parse_field_expr("3/4^2").unwrap(),
            FieldElem::from_rational(Rational::new(9.into(), 16.into()))
        );
    }

    #[test]
    fn negative_exponents_and_unary_minus() {
        assert_eq!(parse_field_expr("q^-1 * q").unwrap(), FieldElem::one());
        assert_eq!(parse_field_expr("-q^2").unwrap(), poly(&[0, 0, -1]));
        assert_eq!(parse_field_expr(" - ( 1 + q ) ").unwrap(), poly(&[-1, -1]));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_field_expr("1 +").unwrap_err().pos, 3);
        assert_eq!(parse_field_expr("(q").unwrap_err().pos, 2);
        assert_eq!(parse_field_expr("q x").unwrap_err().pos, 2);
        assert!(parse_field_expr("1/0").is_err());
        assert!(parse_field_expr("q/(q-q)").is_err());
        assert!(parse_field_expr("0^-1").is_err());
        assert!(parse_field_expr("").is_err());
    }
}
