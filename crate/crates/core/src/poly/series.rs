use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Coefficient;
use crate::error::{Error, Result};

/// A power series in `t` known modulo `t^(cap + 1)`: coefficients
/// `c_0..=c_cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries<C = BigRational> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncSeries<C> {
    /// # Panics
    ///
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs c_0");
        TruncSeries { coeffs }
    }

    /// Pads with zeros (or truncates) to exactly `cap + 1` coefficients.
    pub fn with_cap(mut coeffs: Vec<C>, cap: usize, zero: &C) -> Self {
        coeffs.resize(cap + 1, zero.zero_like());
        TruncSeries { coeffs }
    }

    pub fn constant(c: C, cap: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; cap + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::vanishes)
    }

    /// Index of the first nonzero coefficient, or `AtLeast(cap + 1)`.
    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !c.vanishes()) {
            Some(i) => SeriesOrder::Finite(i as i64),
            None => SeriesOrder::AtLeast(self.cap() as i64 + 1),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncSeries { coeffs: (0..n).map(|i| self.coeffs[i].add_ref(&other.coeffs[i])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(Coefficient::neg_ref).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Truncated product; the result cap is the smaller of the two caps.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.vanishes() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl TruncSeries<BigRational> {
    pub fn from_integers(coeffs: &[i64]) -> Self {
        TruncSeries::new(coeffs.iter().map(|c| BigRational::from_integer((*c).into())).collect())
    }

    /// `t^k` known modulo `t^(cap + 1)`.
    pub fn monomial(k: usize, cap: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); cap + 1];
        if k <= cap {
            coeffs[k] = BigRational::from_integer(1.into());
        }
        TruncSeries { coeffs }
    }
}

/// `c_0 + c_1*t + ... + O(t^(cap + 1))`, zero coefficients omitted.
///
/// ```
/// use motivic_core::poly::TruncSeries;
///
/// let s = TruncSeries::from_integers(&[0, 0, 2, -1, 0]);
/// assert_eq!(s.to_string(), "2*t^2 - t^3 + O(t^5)");
/// ```
impl fmt::Display for TruncSeries<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            let text = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match i {
                0 => f.write_str(&text)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{text}*")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(t^{})", self.coeffs.len())
    }
}

/// A jet of an arc in `R^N`: `N` truncated series sharing one cap, i.e. a
/// point of the `cap`-th jet space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcJet {
    components: Vec<TruncSeries>,
}

impl ArcJet {
    pub fn new(components: Vec<TruncSeries>) -> Result<Self> {
        if let Some(first) = components.first() {
            let cap = first.cap();
            if let Some(bad) = components.iter().find(|c| c.cap() != cap) {
                return Err(Error::IndexMismatch(format!(
                    "arc components have caps {cap} and {}",
                    bad.cap()
                )));
            }
        }
        Ok(ArcJet { components })
    }

    /// Builds an arc from coefficient rows, padding or truncating each row
    /// to `cap + 1` entries.
    pub fn from_rows(rows: Vec<Vec<BigRational>>, cap: usize) -> Self {
        let zero = BigRational::zero();
        ArcJet { components: rows.into_iter().map(|r| TruncSeries::with_cap(r, cap, &zero)).collect() }
    }

    pub fn from_integer_rows(rows: &[&[i64]], cap: usize) -> Self {
        ArcJet::from_rows(
            rows.iter().map(|r| r.iter().map(|c| BigRational::from_integer((*c).into())).collect()).collect(),
            cap,
        )
    }

    pub fn components(&self) -> &[TruncSeries] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn cap(&self) -> usize {
        self.components.first().map_or(0, TruncSeries::cap)
    }
}

/// Order in `t` of a truncated quantity. `AtLeast(k)` records that nothing
/// below `t^k` is visible, so the exact order is unknown but `>= k`.
///
/// Orders may be negative for quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesOrder {
    Finite(i64),
    AtLeast(i64),
}

impl SeriesOrder {
    pub fn finite(self) -> Option<i64> {
        match self {
            SeriesOrder::Finite(v) => Some(v),
            SeriesOrder::AtLeast(_) => None,
        }
    }

    /// Lower bound carried by either variant.
    pub fn lower_bound(self) -> i64 {
        match self {
            SeriesOrder::Finite(v) | SeriesOrder::AtLeast(v) => v,
        }
    }

    /// Sound minimum: an exact value survives only if no unknown order
    /// could undercut it.
    pub fn min(self, other: SeriesOrder) -> SeriesOrder {
        use SeriesOrder::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.min(b)),
            (Finite(a), AtLeast(b)) | (AtLeast(b), Finite(a)) => {
                if a <= b {
                    Finite(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }

    /// Order of a product: exact when both factors are exact.
    pub fn product(self, other: SeriesOrder) -> SeriesOrder {
        use SeriesOrder::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (a, b) => AtLeast(a.lower_bound() + b.lower_bound()),
        }
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Finite(v) => write!(f, "{v}"),
            SeriesOrder::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}
