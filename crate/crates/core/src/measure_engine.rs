//! Motivic integrals over simple-normal-crossings resolution data.
//!
//! Let `σ: M -> X` be a resolution with `M` nonsingular of dimension `d`
//! and exceptional divisor `E = ∪ D_i` with simple normal crossings, such
//! that the Jacobian ideal of `σ` is locally generated by a monomial
//! `Π z_i^{a_i}`. For a stratum `E_I^o` (points lying exactly on the `D_i`,
//! `i ∈ I`) and contact orders `e_i >= 1`, the arcs centred on the stratum
//! with `ord_t z_i(γ) = e_i` form a stable set of measure
//!
//! ```text
//! [E_I^o] (u - 1)^{|I|} u^{-Σ e_i - d}
//! ```
//!
//! along which `ord_t jac_σ = Σ a_i e_i`. Summing over contact tuples gives
//! the change-of-variables integral in closed form:
//!
//! ```text
//! [E_I^o] u^{-d} Π_{i ∈ I} (u - 1) u^{-k_i} Σ_{j >= 0} u^{-k_i j},   k_i = 1 + a_i + α_i
//! ```

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grothendieck::{geometric_sum, LaurentPoly, MotiveSeries, VirtualDim};
use crate::jet_engine::{Approximant, MeasurableDescriptor, StableSetDescriptor};

/// A stratum `E_I^o` of the exceptional divisor (or of the fibre over the
/// base point), with the virtual Poincaré polynomial of its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncStratum {
    pub name: String,
    pub index_set: Vec<u32>,
    pub class: LaurentPoly,
}

/// Orders of vanishing of a monomial generator along the divisor
/// components of a stratum, in the order of its index set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityVector(pub Vec<u32>);

impl MultiplicityVector {
    pub fn zeros(len: usize) -> Self {
        MultiplicityVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn validate_strata(ambient_dim: u32, strata: &[SncStratum]) -> Result<()> {
    for s in strata {
        if s.index_set.len() > ambient_dim as usize {
            return Err(Error::InvalidData(format!(
                "stratum `{}` meets {} components in dimension {ambient_dim}",
                s.name,
                s.index_set.len()
            )));
        }
        let mut sorted = s.index_set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.index_set.len() {
            return Err(Error::InvalidData(format!("stratum `{}` repeats a divisor component", s.name)));
        }
        if s.class.is_zero() {
            return Err(Error::InvalidData(format!("stratum `{}` has zero class", s.name)));
        }
    }
    Ok(())
}

fn check_mults(strata: &[SncStratum], mults: &[MultiplicityVector], what: &str) -> Result<()> {
    if mults.len() != strata.len() {
        return Err(Error::IndexMismatch(format!(
            "{} {what} vectors for {} strata",
            mults.len(),
            strata.len()
        )));
    }
    for (s, m) in strata.iter().zip(mults) {
        if m.len() != s.index_set.len() {
            return Err(Error::IndexMismatch(format!(
                "stratum `{}`: {what} has {} entries for {} components",
                s.name,
                m.len(),
                s.index_set.len()
            )));
        }
    }
    Ok(())
}

/// Resolution data for one map: strata with the Jacobian multiplicities of
/// that map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionData {
    ambient_dim: u32,
    strata: Vec<SncStratum>,
    jac_mults: Vec<MultiplicityVector>,
}

impl ResolutionData {
    pub fn new(
        ambient_dim: u32,
        strata: Vec<SncStratum>,
        jac_mults: Vec<MultiplicityVector>,
    ) -> Result<Self> {
        validate_strata(ambient_dim, &strata)?;
        check_mults(&strata, &jac_mults, "multiplicity")?;
        Ok(ResolutionData { ambient_dim, strata, jac_mults })
    }

    /// `(R^d, 0)` with the identity as resolution: the origin, off any
    /// divisor.
    pub fn trivial(ambient_dim: u32) -> Self {
        ResolutionData {
            ambient_dim,
            strata: vec![SncStratum { name: "origin".into(), index_set: vec![], class: LaurentPoly::one() }],
            jac_mults: vec![MultiplicityVector::default()],
        }
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn strata(&self) -> &[SncStratum] {
        &self.strata
    }

    pub fn jac_mults(&self) -> &[MultiplicityVector] {
        &self.jac_mults
    }

    /// Zero integrand weights, one vector per stratum.
    pub fn zero_weights(&self) -> Vec<Vec<i64>> {
        self.strata.iter().map(|s| vec![0; s.index_set.len()]).collect()
    }
}

/// A resolution diagram `M -> Γ`, `p: Γ -> X`, `q = f ∘ p: Γ -> Y`: shared
/// strata with the Jacobian multiplicities of `p ∘ σ` and `q ∘ σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDiagram {
    ambient_dim: u32,
    strata: Vec<SncStratum>,
    p_mults: Vec<MultiplicityVector>,
    q_mults: Vec<MultiplicityVector>,
}

impl ResolutionDiagram {
    pub fn new(
        ambient_dim: u32,
        strata: Vec<SncStratum>,
        p_mults: Vec<MultiplicityVector>,
        q_mults: Vec<MultiplicityVector>,
    ) -> Result<Self> {
        validate_strata(ambient_dim, &strata)?;
        check_mults(&strata, &p_mults, "p_mults")?;
        check_mults(&strata, &q_mults, "q_mults")?;
        Ok(ResolutionDiagram { ambient_dim, strata, p_mults, q_mults })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn strata(&self) -> &[SncStratum] {
        &self.strata
    }

    pub fn p_mults(&self) -> &[MultiplicityVector] {
        &self.p_mults
    }

    pub fn q_mults(&self) -> &[MultiplicityVector] {
        &self.q_mults
    }

    /// Resolution data of the source side, `p ∘ σ`.
    pub fn p_data(&self) -> ResolutionData {
        ResolutionData {
            ambient_dim: self.ambient_dim,
            strata: self.strata.clone(),
            jac_mults: self.p_mults.clone(),
        }
    }

    /// Resolution data of the target side, `q ∘ σ`.
    pub fn q_data(&self) -> ResolutionData {
        ResolutionData {
            ambient_dim: self.ambient_dim,
            strata: self.strata.clone(),
            jac_mults: self.q_mults.clone(),
        }
    }
}

/// Measure of the arcs centred on `stratum` with contact orders `e` along
/// its divisor components.
///
/// ```
/// use motivic_core::measure_engine::{contact_stratum_measure, SncStratum};
/// use motivic_core::LaurentPoly;
///
/// // exceptional line of the blow-up of the plane, β(P^1) = u + 1
/// let e = SncStratum { name: "E".into(), index_set: vec![1], class: "u + 1".parse().unwrap() };
/// let m = contact_stratum_measure(&e, 2, &[3]).unwrap();
/// assert_eq!(m.to_string(), "u^-3 - u^-5");
/// ```
pub fn contact_stratum_measure(stratum: &SncStratum, ambient_dim: u32, e: &[u32]) -> Result<LaurentPoly> {
    if e.len() != stratum.index_set.len() {
        return Err(Error::IndexMismatch(format!(
            "{} contact orders for {} components",
            e.len(),
            stratum.index_set.len()
        )));
    }
    if let Some((index, &value)) = e.iter().enumerate().find(|(_, v)| **v < 1) {
        return Err(Error::BadContact { index, value });
    }
    let line_minus_point = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let total: i64 = e.iter().map(|v| i64::from(*v)).sum();
    Ok((&stratum.class * &line_minus_point.pow(e.len() as u32)).shift(-total - i64::from(ambient_dim)))
}

/// `ord_t` of the monomial `z^m` along an arc with contact orders `e`.
pub fn ord_jac_on_stratum(m: &MultiplicityVector, e: &[u32]) -> Result<u64> {
    if m.len() != e.len() {
        return Err(Error::IndexMismatch(format!(
            "{} multiplicities for {} contact orders",
            m.len(),
            e.len()
        )));
    }
    Ok(m.0.iter().zip(e).map(|(a, b)| u64::from(*a) * u64::from(*b)).sum())
}

/// Exponents `k_i = 1 + a_i + α_i` of the per-component geometric series.
fn exponents(stratum: &SncStratum, mults: &MultiplicityVector, alpha: &[i64]) -> Result<Vec<i64>> {
    if alpha.len() != mults.len() {
        return Err(Error::IndexMismatch(format!(
            "stratum `{}`: {} weights for {} components",
            stratum.name,
            alpha.len(),
            mults.len()
        )));
    }
    stratum
        .index_set
        .iter()
        .zip(&mults.0)
        .zip(alpha)
        .map(|((comp, a), w)| {
            let k = 1 + i64::from(*a) + w;
            if k <= 0 {
                Err(Error::DivergentExponent { stratum: stratum.name.clone(), component: *comp, exponent: k })
            } else {
                Ok(k)
            }
        })
        .collect()
}

fn check_weights(data: &ResolutionData, alpha: &[Vec<i64>]) -> Result<()> {
    if alpha.len() != data.strata.len() {
        return Err(Error::IndexMismatch(format!(
            "{} weight vectors for {} strata",
            alpha.len(),
            data.strata.len()
        )));
    }
    Ok(())
}

fn stratum_integral(stratum: &SncStratum, ambient_dim: u32, ks: &[i64], floor: i64) -> MotiveSeries {
    let prefactor = stratum.class.shift(-i64::from(ambient_dim));
    if ks.is_empty() {
        return MotiveSeries::from_laurent(&prefactor, floor);
    }
    let top_pre = prefactor.degree().expect("nonzero class");
    // Factors have top <= 0, so their product keeps the working floor and
    // the prefactor shifts it by at most top_pre.
    let work = floor - top_pre.max(0) - 1;
    let mut acc: Option<MotiveSeries> = None;
    for &k in ks {
        let head = LaurentPoly::from_terms([(1 - k, 1), (-k, -1)]);
        let factor = geometric_sum(k as u32, work).mul_exact(&head);
        acc = Some(match acc {
            None => factor,
            Some(a) => &a * &factor,
        });
    }
    let out = acc.expect("nonempty").mul_exact(&prefactor).truncate(floor);
    debug_assert_eq!(out.floor(), floor);
    out
}

/// `∫_{L(M,E)} L^{-(α + ord_t jac_σ)} dμ` modulo terms of degree `<= floor`,
/// with `α` given per stratum as integer weights on its components.
pub fn motivic_integral(data: &ResolutionData, alpha: &[Vec<i64>], floor: i64) -> Result<MotiveSeries> {
    check_weights(data, alpha)?;
    let mut total = MotiveSeries::zero(floor);
    for ((stratum, mults), w) in data.strata.iter().zip(&data.jac_mults).zip(alpha) {
        let ks = exponents(stratum, mults, w)?;
        total = &total + &stratum_integral(stratum, data.ambient_dim, &ks, floor);
    }
    Ok(total)
}

/// Visits every tuple `e` with `e_i >= 1` and `Σ k_i e_i < bound`, or
/// `Σ e_i <= max_sum` when given.
fn for_each_contact(ks: &[i64], bound: i64, max_sum: Option<u32>, f: &mut dyn FnMut(&[u32])) {
    fn go(
        ks: &[i64],
        bound: i64,
        max_sum: Option<u32>,
        cur: &mut Vec<u32>,
        weighted: i64,
        plain: u32,
        f: &mut dyn FnMut(&[u32]),
    ) {
        let i = cur.len();
        if i == ks.len() {
            f(cur);
            return;
        }
        // the remaining components contribute at least 1 each
        let rest_w: i64 = ks[i + 1..].iter().sum();
        let rest_p = (ks.len() - i - 1) as u32;
        let mut e = 1u32;
        loop {
            let w = weighted + ks[i] * i64::from(e);
            let p = plain + e;
            let within = match max_sum {
                Some(m) => p + rest_p <= m,
                None => w + rest_w < bound,
            };
            if !within {
                break;
            }
            cur.push(e);
            go(ks, bound, max_sum, cur, w, p, f);
            cur.pop();
            e += 1;
        }
    }
    go(ks, bound, max_sum, &mut Vec::new(), 0, 0, f);
}

/// The same integral by explicit summation of contact-stratum measures.
///
/// Without an override the enumeration keeps exactly the tuples that can
/// reach above `floor`. With `e_max_override = Some(E)` tuples with
/// `Σ e_i <= E` are summed and the floor is raised, if needed, to the
/// largest degree the omitted tuples could reach.
pub fn enumerate_integral(
    data: &ResolutionData,
    alpha: &[Vec<i64>],
    floor: i64,
    e_max_override: Option<u32>,
) -> Result<MotiveSeries> {
    check_weights(data, alpha)?;
    let d = i64::from(data.ambient_dim);
    let mut total = LaurentPoly::zero();
    let mut effective_floor = floor;
    for ((stratum, mults), w) in data.strata.iter().zip(&data.jac_mults).zip(alpha) {
        let ks = exponents(stratum, mults, w)?;
        let top_class = stratum.class.degree().expect("nonzero class");
        let arity = stratum.index_set.len() as i64;
        if ks.is_empty() {
            total += &stratum.class.shift(-d);
            continue;
        }
        // a tuple contributes terms of degree <= top_class + |I| - d - Σ k_i e_i
        let bound = top_class + arity - d - floor;
        if let Some(e_max) = e_max_override {
            let omitted_top = top_class + arity - d - i64::from(e_max) - 1;
            effective_floor = effective_floor.max(omitted_top);
        }
        let mut err = None;
        for_each_contact(&ks, bound, e_max_override, &mut |e| {
            if err.is_some() {
                return;
            }
            match contact_stratum_measure(stratum, data.ambient_dim, e) {
                Ok(m) => {
                    let weight: i64 = ks.iter().zip(e).map(|(k, v)| (k - 1) * i64::from(*v)).sum();
                    total += &m.shift(-weight);
                }
                Err(x) => err = Some(x),
            }
        });
        if let Some(x) = err {
            return Err(x);
        }
    }
    Ok(MotiveSeries::from_laurent(&total, effective_floor))
}

/// Measure of the arc germ `L(X, x)` through a resolution of `(X, x)`.
pub fn germ_measure(data: &ResolutionData, floor: i64) -> Result<MotiveSeries> {
    motivic_integral(data, &data.zero_weights(), floor)
}

/// Measure of `(q ∘ σ)_*(L(M, E))`, the image of the lifted arcs on the
/// target side.
pub fn image_measure(diagram: &ResolutionDiagram, floor: i64) -> Result<MotiveSeries> {
    germ_measure(&diagram.q_data(), floor)
}

/// Order comparison of two germ measures at their common precision.
pub fn compare_germ_measures(mx: &MotiveSeries, my: &MotiveSeries) -> Result<Ordering> {
    let floor = mx.floor().max(my.floor());
    mx.truncate(floor).leq_order(&my.truncate(floor))
}

/// Stable approximants of the germ measure: the `k`-th approximant collects
/// the contact tuples with `Σ (1 + a_i) e_i <= k`. Approximants are produced
/// until the declared error bound reaches `floor`.
pub fn contact_exhaustion(data: &ResolutionData, floor: i64) -> Result<MeasurableDescriptor> {
    let d = i64::from(data.ambient_dim);
    let weights = data.zero_weights();
    let mut plans = Vec::new();
    let mut exact = LaurentPoly::zero();
    for ((stratum, mults), w) in data.strata.iter().zip(&data.jac_mults).zip(&weights) {
        let ks = exponents(stratum, mults, w)?;
        if ks.is_empty() {
            exact += &stratum.class.shift(-d);
        } else {
            plans.push((stratum, ks));
        }
    }
    if plans.is_empty() {
        return Ok(MeasurableDescriptor::exact(StableSetDescriptor::from_measure(&exact, data.ambient_dim)));
    }
    // tails beyond cutoff T have degree <= top_class + |I| - d - T - 1
    let slack = plans
        .iter()
        .map(|(s, ks)| s.class.degree().expect("nonzero class") + ks.len() as i64 - d)
        .max()
        .expect("nonempty");
    let mut approximants = Vec::new();
    let mut cutoff = 0i64;
    loop {
        let bound = slack - cutoff;
        let mut measure = exact.clone();
        for (stratum, ks) in &plans {
            for_each_contact(ks, cutoff + 1, None, &mut |e| {
                let m = contact_stratum_measure(stratum, data.ambient_dim, e).expect("contacts >= 1");
                let weight: i64 = ks.iter().zip(e).map(|(k, v)| (k - 1) * i64::from(*v)).sum();
                measure += &m.shift(-weight);
            });
        }
        approximants.push(Approximant {
            set: StableSetDescriptor::from_measure(&measure, data.ambient_dim),
            error_bound: VirtualDim::Finite(bound),
        });
        if bound <= floor {
            break;
        }
        cutoff += 1;
    }
    MeasurableDescriptor::new(approximants)
}
