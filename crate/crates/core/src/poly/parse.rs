//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" uint]
//! atom   := uint ["/" uint] | ident | "(" expr ")"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::MultiPoly;
use crate::error::ParseError;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [String],
}

pub(crate) fn parse_poly(src: &str, vars: &[String]) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { src, pos: 0, vars };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(ParseError::new(p.pos, "unexpected input after expression"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let n = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        self.pos += n;
        (n > 0).then(|| &self.src[start..start + n])
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        // Catch juxtaposition early with a precise message.
        if let Some(ch) = self.peek() {
            if ch.is_alphanumeric() || ch == '(' || ch == '_' {
                return Err(ParseError::new(self.pos, "implicit multiplication is not allowed; use `*`"));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let digits =
                self.uint().ok_or_else(|| ParseError::new(self.pos, "expected a nonnegative exponent"))?;
            let k: u32 = digits.parse().map_err(|_| ParseError::new(at, "exponent out of range"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::new(self.pos, "expected `)`"));
                }
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let num: BigInt = self.uint().unwrap_or("0").parse().expect("digits");
                let den: BigInt = if self.eat('/') {
                    let at = self.pos;
                    let d: BigInt = self
                        .uint()
                        .ok_or_else(|| ParseError::new(at, "expected a denominator"))?
                        .parse()
                        .expect("digits");
                    if d.is_zero() {
                        return Err(ParseError::new(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(MultiPoly::constant(self.vars, BigRational::new(num, den)))
            }
            Some(ch) if ch.is_alphabetic() || ch == '_' => {
                let len = self.src[start..]
                    .char_indices()
                    .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
                    .map_or(self.src.len() - start, |(i, _)| i);
                let name = &self.src[start..start + len];
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| ParseError::new(start, format!("unknown variable `{name}`")))?;
                self.pos = start + len;
                Ok(MultiPoly::var(self.vars, idx))
            }
            Some(_) => Err(ParseError::new(start, "expected a number, variable or `(`")),
            None => Err(ParseError::new(start, "unexpected end of input")),
        }
    }
}
