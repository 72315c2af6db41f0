use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::parse;
use crate::error::ParseError;

/// Ring elements usable as coefficients of a truncated series.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    /// The zero of the ring `self` lives in.
    fn zero_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
}

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial with rational coefficients over an ordered list of named
/// variables.
///
/// Arithmetic is only defined between polynomials over the same variable
/// list; mixing lists is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[String]) -> Self {
        MultiPoly::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The coordinate function of variable `index`.
    pub fn var(vars: &[String], index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut p = MultiPoly::zero(vars);
        p.add_term(exps, BigRational::one());
        p
    }

    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    /// Parses the polynomial grammar: identifiers from `vars`, integer and
    /// `p/q` literals, `+ - * ^` and parentheses. Juxtaposition is not
    /// multiplication.
    ///
    /// ```
    /// use motivic_core::poly::{MultiPoly, vars};
    ///
    /// let v = vars(&["x", "y"]);
    /// let f = MultiPoly::parse("y^2 - x^3", &v).unwrap();
    /// assert_eq!(f.to_string(), "-x^3 + y^2");
    /// assert_eq!(MultiPoly::parse("x +* y", &v).unwrap_err().offset, 3);
    /// ```
    pub fn parse(text: &str, vars: &[String]) -> Result<Self, ParseError> {
        parse::parse_poly(text, vars)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn derivative(&self, index: usize) -> Self {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m[index];
            if k == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[index] = k - 1;
            out.add_term(dm, c * BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }

    /// Terms in display order: total degree descending, then exponent
    /// vectors descending.
    fn display_order(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        ts
    }
}

impl Coefficient for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.vars)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &BigRational) -> Self {
        MultiPoly::scale(self, c)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_order();
        if terms.is_empty() {
            return f.write_char('0');
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            match (i == 0, c.is_negative()) {
                (true, true) => f.write_char('-')?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let is_const = m.iter().all(|k| *k == 0);
            if is_const {
                write_rational(f, &mag)?;
                continue;
            }
            let mut sep = "";
            if !mag.is_one() {
                write_rational(f, &mag)?;
                sep = "*";
            }
            for (name, k) in self.vars.iter().zip(m) {
                match k {
                    0 => {}
                    1 => {
                        write!(f, "{sep}{name}")?;
                        sep = "*";
                    }
                    _ => {
                        write!(f, "{sep}{name}^{k}")?;
                        sep = "*";
                    }
                }
            }
        }
        Ok(())
    }
}
