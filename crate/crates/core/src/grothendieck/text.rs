//! Canonical text form: terms in strictly decreasing exponent order, each
//! `c*u^e` with explicit signs between terms, and a trailing `O(u^floor)`
//! on series. `u^1` prints as `u`, `c*u^0` as `c`, and unit coefficients
//! are dropped.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, MotiveSeries};
use crate::error::ParseError;

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
) -> Result<bool, fmt::Error> {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => f.write_char('-')?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        let mag = c.abs();
        match e {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e == 1 {
                    f.write_char('u')?;
                } else {
                    write!(f, "u^{e}")?;
                }
            }
        }
        first = false;
    }
    Ok(!first)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !write_terms(f, self.terms())? {
            f.write_char('0')?;
        }
        Ok(())
    }
}

impl fmt::Display for MotiveSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if write_terms(f, self.terms())? {
            f.write_str(" + ")?;
        }
        write!(f, "O(u^{})", self.floor())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if !ch.is_whitespace() {
                break;
            }
            self.pos += ch.len_utf8();
        }
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

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected `{ch}`")))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        self.pos += len;
        (len > 0).then(|| &self.src[start..start + len])
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let neg = self.eat('-');
        let digits =
            self.digits().ok_or_else(|| ParseError::new(self.pos, "expected an integer exponent"))?;
        let v: i64 = digits.parse().map_err(|_| ParseError::new(start, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `u` optionally followed by `^int`.
    fn power(&mut self) -> Result<i64, ParseError> {
        self.expect('u')?;
        if self.eat('^') {
            self.signed_int()
        } else {
            Ok(1)
        }
    }
}

enum Item {
    Term(i64, BigInt),
    BigO(i64),
}

fn parse_items(src: &str) -> Result<Vec<(usize, Item)>, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut items = Vec::new();
    let mut first = true;
    loop {
        let sign_pos = cur.pos;
        let neg = if first {
            cur.eat('-')
        } else if cur.eat('+') {
            false
        } else if cur.eat('-') {
            true
        } else {
            match cur.peek() {
                None => break,
                Some(_) => return Err(ParseError::new(cur.pos, "expected `+` or `-`")),
            }
        };
        let start = cur.pos;
        let item = match cur.peek() {
            Some('O') => {
                cur.pos += 1;
                if neg {
                    return Err(ParseError::new(sign_pos, "`O(...)` cannot be negated"));
                }
                cur.expect('(')?;
                let e = cur.power()?;
                cur.expect(')')?;
                Item::BigO(e)
            }
            Some('u') => {
                let e = cur.power()?;
                Item::Term(e, if neg { -BigInt::one() } else { BigInt::one() })
            }
            Some(ch) if ch.is_ascii_digit() => {
                let digits = cur.digits().unwrap_or_default();
                let mut c: BigInt = digits.parse().map_err(|_| ParseError::new(start, "bad integer"))?;
                if neg {
                    c = -c;
                }
                let e = if cur.eat('*') { cur.power()? } else { 0 };
                Item::Term(e, c)
            }
            _ => return Err(ParseError::new(cur.pos, "expected a term")),
        };
        items.push((start, item));
        first = false;
    }
    if items.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    Ok(items)
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = LaurentPoly::zero();
        for (pos, item) in parse_items(s)? {
            match item {
                Item::Term(e, c) => p.add_term(e, c),
                Item::BigO(_) => return Err(ParseError::new(pos, "`O(...)` is only allowed in a series")),
            }
        }
        Ok(p)
    }
}

impl FromStr for MotiveSeries {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let items = parse_items(s)?;
        let n = items.len();
        let mut p = LaurentPoly::zero();
        let mut floor = None;
        for (i, (pos, item)) in items.into_iter().enumerate() {
            match item {
                Item::Term(e, c) => p.add_term(e, c),
                Item::BigO(e) if i + 1 == n => floor = Some(e),
                Item::BigO(_) => return Err(ParseError::new(pos, "`O(...)` must be the last term")),
            }
        }
        let floor = floor.ok_or_else(|| ParseError::new(s.len(), "missing trailing `O(u^floor)`"))?;
        Ok(MotiveSeries::from_laurent(&p, floor))
    }
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(LaurentPoly);
string_serde!(MotiveSeries);
