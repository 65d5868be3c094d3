//! Infix polynomial syntax: `x1^2 + x2^2 - 1`, `3/4*x1*(x2 - 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{MPoly, Rat, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parse with default variable names `x1, x2, ...`.
pub fn parse_poly(src: &str) -> Result<MPoly, ParseError> {
    Parser::new(src, None).parse()
}

/// Parse resolving identifiers against `names` (index `k` is `x_{k+1}`).
pub fn parse_poly_with(src: &str, names: &[String]) -> Result<MPoly, ParseError> {
    Parser::new(src, Some(names)).parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: Option<&'a [String]>) -> Self {
        Parser { src: src.as_bytes(), pos: 0, names }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
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

    fn parse(mut self) -> Result<MPoly, ParseError> {
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => {
                            return Err(ParseError { offset: at, message: "division by zero".into() })
                        }
                        None => {
                            return Err(ParseError {
                                offset: at,
                                message: "division by a non-constant".into(),
                            })
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = match text.parse() {
                Ok(e) if e <= 1000 => e,
                _ => return Err(ParseError { offset: start, message: "exponent too large".into() }),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number().map(MPoly::constant),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn number(&mut self) -> Result<Rat, ParseError> {
        let start = self.pos;
        let mut int_part = String::new();
        let mut frac_part = String::new();
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            int_part.push(self.src[self.pos] as char);
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                frac_part.push(self.src[self.pos] as char);
                self.pos += 1;
            }
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseError { offset: start, message: "malformed number".into() });
        }
        Ok(decimal_to_rat(&int_part, &frac_part))
    }

    fn ident(&mut self) -> Result<MPoly, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let var = match self.names {
            Some(names) => names.iter().position(|n| n == name).map(|k| Var(k + 1)),
            None => name
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(Var),
        };
        match var {
            Some(v) => Ok(MPoly::var(v)),
            None => Err(ParseError { offset: start, message: format!("unknown variable '{name}'") }),
        }
    }
}

/// Exact rational from decimal digit strings.
pub(crate) fn decimal_to_rat(int_part: &str, frac_part: &str) -> Rat {
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
    let mut den = BigInt::one();
    for _ in 0..frac_part.len() {
        den *= 10;
    }
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn parses_compact_infix() {
        let p = parse_poly("x1^2+x2^2-1").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.eval(&[rat(1, 1), rat(1, 1)]), rat(1, 1));
    }

    #[test]
    fn decimals_and_division() {
        let p = parse_poly("0.5*x1 + 3/4").unwrap();
        assert_eq!(p.eval(&[rat(1, 1)]), rat(5, 4));
    }

    #[test]
    fn named_variables() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = parse_poly_with("x*y - y^2", &names).unwrap();
        assert_eq!(p, parse_poly("x1*x2 - x2^2").unwrap());
        let e = parse_poly_with("z + 1", &names).unwrap_err();
        assert_eq!(e.offset, 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x1 / x2").is_err());
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("x1 ) ").is_err());
        assert!(parse_poly("x0").is_err());
    }
}
