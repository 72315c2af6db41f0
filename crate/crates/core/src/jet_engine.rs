//! Descriptor calculus for stable sets, cylinders and measurable sets of
//! arcs.
//!
//! Sets are never materialized. A stable set at level `n` in an ambient
//! space of dimension `d` is described by the class of its image in the
//! `n`-th jet space; moving to level `n + 1` multiplies the class by `u^d`,
//! and the measure `[π_n(A)] · u^{-(n+1)d}` does not depend on the level.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grothendieck::{LaurentPoly, MotiveSeries, VirtualDim};

/// A stable set: level, class of its image at that level, ambient dimension.
///
/// Serializes as `{"level": n, "class": "<laurent>", "dim": d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSetDescriptor {
    pub level: u32,
    #[serde(rename = "class")]
    pub class_at_level: LaurentPoly,
    #[serde(rename = "dim")]
    pub ambient_dim: u32,
}

impl StableSetDescriptor {
    pub fn new(level: u32, class_at_level: LaurentPoly, ambient_dim: u32) -> Self {
        StableSetDescriptor { level, class_at_level, ambient_dim }
    }

    /// Smallest level at which `measure` is the measure of a set whose
    /// class is a polynomial (no negative powers of `u`).
    pub fn from_measure(measure: &LaurentPoly, ambient_dim: u32) -> Self {
        let d = i64::from(ambient_dim);
        let low = measure.low_degree().unwrap_or(0);
        let level = if d == 0 {
            0
        } else {
            // need low + (n + 1) d >= 0
            let needed = (-low + d - 1).div_euclid(d) - 1;
            needed.max(0)
        };
        let class = measure.shift((level + 1) * d);
        StableSetDescriptor::new(level as u32, class, ambient_dim)
    }

    /// `[π_n(A)] · u^{-(n+1)d}`.
    ///
    /// ```
    /// use motivic_core::jet_engine::StableSetDescriptor;
    /// use motivic_core::LaurentPoly;
    ///
    /// // arcs of the plane centred at the origin, seen at level 3
    /// let a = StableSetDescriptor::new(3, LaurentPoly::monomial(1, 6), 2);
    /// assert_eq!(a.measure(), LaurentPoly::monomial(1, -2));
    /// assert_eq!(a.re_level(7).unwrap().measure(), a.measure());
    /// ```
    pub fn measure(&self) -> LaurentPoly {
        let shift = -(i64::from(self.level) + 1) * i64::from(self.ambient_dim);
        self.class_at_level.shift(shift)
    }

    /// The same set described at level `m >= level`.
    pub fn re_level(&self, m: u32) -> Result<Self> {
        if m < self.level {
            return Err(Error::InvalidLevel { from: self.level, to: m });
        }
        let steps = i64::from(m - self.level) * i64::from(self.ambient_dim);
        Ok(StableSetDescriptor::new(m, self.class_at_level.shift(steps), self.ambient_dim))
    }

    /// `dim π_n(A) - (n + 1) d`.
    pub fn virtual_dim(&self) -> VirtualDim {
        match self.class_at_level.virtual_dim() {
            VirtualDim::Finite(k) => {
                VirtualDim::Finite(k - (i64::from(self.level) + 1) * i64::from(self.ambient_dim))
            }
            VirtualDim::NegInfinity => VirtualDim::NegInfinity,
        }
    }
}

/// `π_n^{-1}(C)` for a set `C` of `n`-jets with class `base_class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDescriptor {
    pub level: u32,
    pub base_class: LaurentPoly,
    pub ambient_dim: u32,
    pub nonsingular_ambient: bool,
}

impl CylinderDescriptor {
    /// Over a nonsingular ambient space a cylinder is stable at its level.
    pub fn to_stable(&self) -> Result<StableSetDescriptor> {
        if !self.nonsingular_ambient {
            return Err(Error::SingularAmbient);
        }
        Ok(StableSetDescriptor::new(self.level, self.base_class.clone(), self.ambient_dim))
    }

    pub fn measure(&self) -> Result<LaurentPoly> {
        Ok(self.to_stable()?.measure())
    }
}

/// A stable approximant `A_m` with its declared error bound: the symmetric
/// difference with the target set is covered by stable sets of virtual
/// dimension `< error_bound`. `NegInfinity` means the approximant is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximant {
    pub set: StableSetDescriptor,
    pub error_bound: VirtualDim,
}

/// A measurable set given by stable approximants with strictly decreasing
/// error bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurableDescriptor {
    approximants: Vec<Approximant>,
}

impl MeasurableDescriptor {
    pub fn new(approximants: Vec<Approximant>) -> Result<Self> {
        if let Some(i) = approximants.windows(2).position(|w| w[1].error_bound >= w[0].error_bound) {
            return Err(Error::NotDecreasing { index: i + 1 });
        }
        Ok(MeasurableDescriptor { approximants })
    }

    /// A stable set is its own exact approximant.
    pub fn exact(set: StableSetDescriptor) -> Self {
        MeasurableDescriptor { approximants: vec![Approximant { set, error_bound: VirtualDim::NegInfinity }] }
    }

    pub fn approximants(&self) -> &[Approximant] {
        &self.approximants
    }
}

/// Measure of a stable set.
pub fn measure_stable(a: &StableSetDescriptor) -> LaurentPoly {
    a.measure()
}

pub fn measure_cylinder(c: &CylinderDescriptor) -> Result<LaurentPoly> {
    c.measure()
}

/// Measure of a measurable set modulo terms of degree `<= floor`, read off
/// the first approximant whose error bound is at most `floor`.
pub fn measure_measurable(a: &MeasurableDescriptor, floor: i64) -> Result<MotiveSeries> {
    a.approximants
        .iter()
        .find(|ap| ap.error_bound <= VirtualDim::Finite(floor))
        .map(|ap| MotiveSeries::from_laurent(&ap.set.measure(), floor))
        .ok_or(Error::InsufficientApproximants { floor })
}

/// Measure of a disjoint union (disjointness is the caller's contract).
pub fn disjoint_union_measure(parts: &[MeasurableDescriptor], floor: i64) -> Result<MotiveSeries> {
    parts.iter().try_fold(MotiveSeries::zero(floor), |acc, part| Ok(&acc + &measure_measurable(part, floor)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn measure_examples() {
        // arcs of R^2 through the origin, level n: class u^{2n}
        for n in 0..6 {
            let a = StableSetDescriptor::new(n, LaurentPoly::monomial(1, 2 * i64::from(n)), 2);
            assert_eq!(a.measure(), lp(&[(-2, 1)]));
        }
        let whole = StableSetDescriptor::new(0, LaurentPoly::lefschetz(), 1);
        assert_eq!(whole.measure(), LaurentPoly::one());
        let empty = StableSetDescriptor::new(4, LaurentPoly::zero(), 3);
        assert!(empty.measure().is_zero());
        assert_eq!(empty.virtual_dim(), VirtualDim::NegInfinity);
    }

    #[test]
    fn re_level_examples() {
        let a = StableSetDescriptor::new(2, lp(&[(4, 1)]), 2);
        let b = a.re_level(3).unwrap();
        assert_eq!(b.class_at_level, lp(&[(6, 1)]));
        assert_eq!(a.measure(), b.measure());
        assert_eq!(a.re_level(2).unwrap(), a);
        let c = StableSetDescriptor::new(1, lp(&[(2, 1), (1, -1)]), 1);
        assert_eq!(c.re_level(3).unwrap().class_at_level, lp(&[(4, 1), (3, -1)]));
        assert!(matches!(a.re_level(1), Err(Error::InvalidLevel { from: 2, to: 1 })));
    }

    #[test]
    fn cylinders() {
        let origin = CylinderDescriptor {
            level: 0,
            base_class: LaurentPoly::one(),
            ambient_dim: 1,
            nonsingular_ambient: true,
        };
        assert_eq!(origin.measure().unwrap(), lp(&[(-1, 1)]));
        let order_one = CylinderDescriptor { level: 1, base_class: lp(&[(1, 1), (0, -1)]), ..origin.clone() };
        assert_eq!(order_one.measure().unwrap(), lp(&[(-1, 1), (-2, -1)]));
        let full = CylinderDescriptor {
            level: 3,
            base_class: LaurentPoly::monomial(1, 8),
            ambient_dim: 2,
            nonsingular_ambient: true,
        };
        assert_eq!(full.measure().unwrap(), LaurentPoly::one());
        let singular = CylinderDescriptor { nonsingular_ambient: false, ..origin };
        assert_eq!(singular.measure(), Err(Error::SingularAmbient));
    }

    #[test]
    fn from_measure_picks_a_polynomial_class() {
        let m = lp(&[(-1, 1), (-7, -1)]);
        let a = StableSetDescriptor::from_measure(&m, 2);
        assert!(a.class_at_level.low_degree().unwrap() >= 0);
        assert_eq!(a.measure(), m);
        assert_eq!(a.level, 3);
    }

    #[test]
    fn measurable_sets() {
        let a = StableSetDescriptor::new(0, LaurentPoly::one(), 1);
        let exact = MeasurableDescriptor::exact(a.clone());
        assert_eq!(measure_measurable(&exact, -5).unwrap(), MotiveSeries::from_laurent(&a.measure(), -5));
        let none = MeasurableDescriptor::new(vec![]).unwrap();
        assert_eq!(measure_measurable(&none, -5), Err(Error::InsufficientApproximants { floor: -5 }));
        let coarse = MeasurableDescriptor::new(vec![Approximant {
            set: a.clone(),
            error_bound: VirtualDim::Finite(-3),
        }])
        .unwrap();
        assert!(measure_measurable(&coarse, -5).is_err());
        assert!(measure_measurable(&coarse, -3).is_ok());
        let bad = MeasurableDescriptor::new(vec![
            Approximant { set: a.clone(), error_bound: VirtualDim::Finite(-3) },
            Approximant { set: a, error_bound: VirtualDim::Finite(-3) },
        ]);
        assert_eq!(bad, Err(Error::NotDecreasing { index: 1 }));
    }

    #[test]
    fn contact_strata_of_the_line_exhaust_the_germ() {
        // C_e = arcs of R with order exactly e: class (u - 1) u^{n-e} at level n = e
        let floor = -12;
        let parts: Vec<_> = (1..=14)
            .map(|e| MeasurableDescriptor::exact(StableSetDescriptor::new(e, lp(&[(1, 1), (0, -1)]), 1)))
            .collect();
        let total = disjoint_union_measure(&parts, floor).unwrap();
        assert_eq!(total, MotiveSeries::from_laurent(&lp(&[(-1, 1)]), floor));
        assert_eq!(
            disjoint_union_measure(&parts[..1], floor).unwrap(),
            measure_measurable(&parts[0], floor).unwrap()
        );
    }
}
