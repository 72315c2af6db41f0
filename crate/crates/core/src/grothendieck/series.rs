use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::LaurentPoly;
use crate::error::{Error, Result};

/// An element of the completed ring known modulo terms of degree `<= floor`:
/// a truncated series in `u^-1`.
///
/// Every stored exponent is strictly above the floor; the unknown tail has
/// degree at most `floor`.
///
/// ```
/// use motivic_core::{geometric_sum, MotiveSeries};
///
/// let g = geometric_sum(1, -4);
/// assert_eq!(g.to_string(), "1 + u^-1 + u^-2 + u^-3 + O(u^-4)");
/// let parsed: MotiveSeries = "1 + u^-1 + u^-2 + u^-3 + O(u^-4)".parse().unwrap();
/// assert_eq!(parsed, g);
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotiveSeries {
    terms: BTreeMap<i64, BigInt>,
    floor: i64,
}

impl MotiveSeries {
    pub fn new<I, C>(terms: I, floor: i64) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let poly = LaurentPoly::from_terms(terms);
        MotiveSeries::from_laurent(&poly, floor)
    }

    /// The element known to be zero above `floor`, i.e. `O(u^floor)`.
    pub fn zero(floor: i64) -> Self {
        MotiveSeries { terms: BTreeMap::new(), floor }
    }

    /// Embeds an exact element, forgetting everything at or below `floor`.
    pub fn from_laurent(p: &LaurentPoly, floor: i64) -> Self {
        MotiveSeries {
            terms: p.map().range(floor.saturating_add(1)..).map(|(e, c)| (*e, c.clone())).collect(),
            floor,
        }
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Highest exponent with a known nonzero coefficient; `None` for an
    /// element that is zero so far.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Known terms in strictly decreasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn is_zero_to_floor(&self) -> bool {
        self.terms.is_empty()
    }

    /// The known terms as an exact polynomial.
    pub fn known_part(&self) -> LaurentPoly {
        LaurentPoly::from_map(self.terms.clone())
    }

    /// Raises the floor to `max(self.floor, floor)`; precision is never
    /// invented.
    pub fn truncate(&self, floor: i64) -> Self {
        let floor = floor.max(self.floor);
        MotiveSeries {
            terms: self.terms.range(floor.saturating_add(1)..).map(|(e, c)| (*e, c.clone())).collect(),
            floor,
        }
    }

    /// Multiplication by an exact element. The unknown tail is shifted by
    /// the degree of `p`.
    pub fn mul_exact(&self, p: &LaurentPoly) -> Self {
        match p.degree() {
            None => MotiveSeries::zero(i64::MIN / 4),
            Some(deg) => {
                let prod = &self.known_part() * p;
                MotiveSeries::from_laurent(&prod, self.floor + deg)
            }
        }
    }

    /// Virtual dimension: the degree of the known part.
    pub fn virtual_dim(&self) -> Result<i64> {
        self.top().ok_or(Error::PrecisionExhausted { floor: self.floor })
    }

    /// Compares `self` against `other` in the order of the completion.
    ///
    /// A difference vanishing to the common floor counts as `Equal` as long
    /// as one operand has a known term; when both operands are zero so far
    /// nothing is decided and `PrecisionExhausted` is returned.
    pub fn leq_order(&self, other: &MotiveSeries) -> Result<Ordering> {
        let diff = other - self;
        match diff.terms.values().next_back() {
            Some(c) if c.is_positive() => Ok(Ordering::Less),
            Some(_) => Ok(Ordering::Greater),
            None if self.top().is_none() && other.top().is_none() => {
                Err(Error::PrecisionExhausted { floor: diff.floor })
            }
            None => Ok(Ordering::Equal),
        }
    }

    fn combine(&self, other: &MotiveSeries, sign: i32) -> MotiveSeries {
        let floor = self.floor.max(other.floor);
        let mut acc = self.known_part();
        for (e, c) in &other.terms {
            acc.add_term(*e, if sign < 0 { -c } else { c.clone() });
        }
        MotiveSeries::from_laurent(&acc, floor)
    }
}

impl<'a> Add<&'a MotiveSeries> for &'a MotiveSeries {
    type Output = MotiveSeries;

    fn add(self, rhs: &'a MotiveSeries) -> MotiveSeries {
        self.combine(rhs, 1)
    }
}

impl<'a> Sub<&'a MotiveSeries> for &'a MotiveSeries {
    type Output = MotiveSeries;

    fn sub(self, rhs: &'a MotiveSeries) -> MotiveSeries {
        self.combine(rhs, -1)
    }
}

impl<'a> Mul<&'a MotiveSeries> for &'a MotiveSeries {
    type Output = MotiveSeries;

    /// The product is contaminated by `known_a * tail_b`, `tail_a * known_b`
    /// and `tail_a * tail_b`; the result floor is the worst of those degrees.
    fn mul(self, rhs: &'a MotiveSeries) -> MotiveSeries {
        let mut floor = self.floor + rhs.floor;
        if let Some(top) = self.top() {
            floor = floor.max(top + rhs.floor);
        }
        if let Some(top) = rhs.top() {
            floor = floor.max(self.floor + top);
        }
        let prod = &self.known_part() * &rhs.known_part();
        MotiveSeries::from_laurent(&prod, floor)
    }
}

impl Neg for &MotiveSeries {
    type Output = MotiveSeries;

    fn neg(self) -> MotiveSeries {
        MotiveSeries { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(), floor: self.floor }
    }
}

impl Add for MotiveSeries {
    type Output = MotiveSeries;
    fn add(self, rhs: MotiveSeries) -> MotiveSeries {
        &self + &rhs
    }
}

impl Sub for MotiveSeries {
    type Output = MotiveSeries;
    fn sub(self, rhs: MotiveSeries) -> MotiveSeries {
        &self - &rhs
    }
}

impl Mul for MotiveSeries {
    type Output = MotiveSeries;
    fn mul(self, rhs: MotiveSeries) -> MotiveSeries {
        &self * &rhs
    }
}

/// `sum_{i >= 0} u^{-p i}` known above `floor`, the inverse of `1 - u^-p`
/// in the completion.
///
/// # Panics
///
/// Panics if `p == 0`.
pub fn geometric_sum(p: u32, floor: i64) -> MotiveSeries {
    assert!(p >= 1, "geometric_sum needs a positive step");
    let step = i64::from(p);
    let terms = (0..).map(|i: i64| -step * i).take_while(|e| *e > floor).map(|e| (e, 1));
    MotiveSeries::new(terms, floor)
}

/// Finite-precision Cauchy limit of `seq`.
///
/// `bounds[k]` is a strict upper bound for the virtual dimension of
/// `seq[k + 1] - seq[k]`. An extra trailing entry may bound the differences
/// after the last element. Bounds must strictly decrease. The result is the
/// last element with its floor raised to the last bound.
pub fn limit_of_sequence(seq: &[MotiveSeries], bounds: &[i64]) -> Result<MotiveSeries> {
    let last = seq.last().ok_or(Error::InsufficientApproximants { floor: 0 })?;
    let needed = seq.len() - 1;
    if bounds.len() != needed && bounds.len() != needed + 1 {
        return Err(Error::ArityMismatch { expected: needed, found: bounds.len() });
    }
    if let Some(i) = bounds.windows(2).position(|w| w[1] >= w[0]) {
        return Err(Error::NotDecreasing { index: i + 1 });
    }
    for (k, pair) in seq.windows(2).enumerate() {
        let diff = &pair[1] - &pair[0];
        let bound = bounds[k];
        match diff.top() {
            Some(dim) if dim >= bound => return Err(Error::BoundViolated { index: k, dim, bound }),
            Some(_) => {}
            // Zero so far: the difference has dimension at most its floor.
            None if diff.floor() >= bound => return Err(Error::PrecisionExhausted { floor: diff.floor() }),
            None => {}
        }
    }
    Ok(match bounds.last() {
        Some(&b) => last.truncate(b),
        None => last.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, i64)], floor: i64) -> MotiveSeries {
        MotiveSeries::new(terms.iter().copied(), floor)
    }

    #[test]
    fn add_takes_the_coarser_floor() {
        let a = s(&[(0, 1), (-1, 1)], -5);
        let b = s(&[(-1, -1), (-3, 2)], -3);
        assert_eq!(&a + &b, s(&[(0, 1)], -3));
    }

    #[test]
    fn mul_propagates_contamination() {
        // (1 + u^-1 + O(u^-3)) * u = u + 1 + O(u^-2)
        let a = s(&[(0, 1), (-1, 1)], -3);
        let u = MotiveSeries::from_laurent(&LaurentPoly::lefschetz(), -100);
        let prod = &a * &u;
        assert_eq!(prod, s(&[(1, 1), (0, 1)], -2));
        assert_eq!(a.mul_exact(&LaurentPoly::lefschetz()), prod);
    }

    #[test]
    fn mul_of_zero_so_far_elements() {
        let a = MotiveSeries::zero(-3);
        let b = MotiveSeries::zero(-4);
        assert_eq!((&a * &b).floor(), -7);
    }

    #[test]
    fn geometric_sum_examples() {
        assert_eq!(geometric_sum(1, -4), s(&[(0, 1), (-1, 1), (-2, 1), (-3, 1)], -4));
        assert_eq!(geometric_sum(2, -5), s(&[(0, 1), (-2, 1), (-4, 1)], -5));
        let one_minus = LaurentPoly::from_terms([(0, 1), (-2, -1)]);
        let prod = geometric_sum(2, -20).mul_exact(&one_minus);
        assert_eq!(prod.known_part(), LaurentPoly::one());
        assert!(prod.floor() <= -19);
    }

    #[test]
    fn dims_and_order() {
        assert_eq!(s(&[(-3, 1), (-7, 1)], -10).virtual_dim(), Ok(-3));
        assert_eq!(MotiveSeries::zero(-6).virtual_dim(), Err(Error::PrecisionExhausted { floor: -6 }));
        let a = s(&[(-1, 1), (-2, -1)], -10);
        let b = s(&[(-1, 1)], -10);
        assert_eq!(a.leq_order(&b), Ok(Ordering::Less));
        assert_eq!(b.leq_order(&a), Ok(Ordering::Greater));
        assert_eq!(a.leq_order(&a), Ok(Ordering::Equal));
        assert!(MotiveSeries::zero(-3).leq_order(&MotiveSeries::zero(-3)).is_err());
    }

    #[test]
    fn limits() {
        let c = s(&[(0, 1)], -8);
        assert_eq!(limit_of_sequence(std::slice::from_ref(&c), &[]).unwrap(), c);
        assert_eq!(limit_of_sequence(&[c.clone(), c.clone()], &[-7]).unwrap(), c.truncate(-7));
        // a zero-so-far difference cannot be shown to sit below a bound under its floor
        assert!(matches!(
            limit_of_sequence(&[c.clone(), c.clone()], &[-9]),
            Err(Error::PrecisionExhausted { floor: -8 })
        ));

        let k = 12;
        let partial: Vec<_> = (0..=k).map(|n| MotiveSeries::new((0..=n).map(|i| (-i, 1)), -100)).collect();
        let bounds: Vec<i64> = (0..=k).map(|j| -j).collect();
        assert_eq!(limit_of_sequence(&partial, &bounds).unwrap(), geometric_sum(1, -k));

        let seq = [s(&[(1, 1)], -100), s(&[(1, 1), (-5, 1)], -100)];
        assert_eq!(limit_of_sequence(&seq, &[-4]).unwrap(), s(&[(1, 1)], -4));
        assert!(matches!(
            limit_of_sequence(&seq, &[-6]),
            Err(Error::BoundViolated { index: 0, dim: -5, bound: -6 })
        ));
        assert!(matches!(
            limit_of_sequence(&partial[..3], &[-1, -1]),
            Err(Error::NotDecreasing { index: 1 })
        ));
    }
}
