//! Seeded generators for randomized checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use motivic_core::measure_engine::{MultiplicityVector, ResolutionData, ResolutionDiagram, SncStratum};
use motivic_core::poly::{ArcJet, MultiPoly};
use motivic_core::LaurentPoly;

/// Up to `max_terms` terms with exponents in `-span..=span` and small
/// coefficients.
pub fn laurent<R: Rng>(rng: &mut R, max_terms: usize, span: i64) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(-span..=span), rng.gen_range(-9i64..=9))))
}

/// A nonzero class with positive leading coefficient and degree at most
/// `max_dim`, as the class of a nonempty stratum would have.
pub fn stratum_class<R: Rng>(rng: &mut R, max_dim: i64) -> LaurentPoly {
    let top = rng.gen_range(0..=max_dim);
    let mut terms = vec![(top, rng.gen_range(1i64..=3))];
    for e in 0..top {
        terms.push((e, rng.gen_range(-2i64..=2)));
    }
    LaurentPoly::from_terms(terms)
}

pub fn mults<R: Rng>(rng: &mut R, len: usize, max: u32) -> MultiplicityVector {
    MultiplicityVector((0..len).map(|_| rng.gen_range(0..=max)).collect())
}

/// Random strata in dimension `d` meeting at most `max_components`
/// divisor components each.
pub fn strata<R: Rng>(rng: &mut R, d: u32, count: usize, max_components: usize) -> Vec<SncStratum> {
    (0..count)
        .map(|k| {
            let size = rng.gen_range(0..=max_components.min(d as usize));
            let mut index_set: Vec<u32> = (1..=4u32).collect();
            for i in (1..index_set.len()).rev() {
                index_set.swap(i, rng.gen_range(0..=i));
            }
            index_set.truncate(size);
            index_set.sort_unstable();
            let max_dim = i64::from(d) - size as i64;
            SncStratum { name: format!("S{k}"), index_set, class: stratum_class(rng, max_dim) }
        })
        .collect()
}

pub fn resolution<R: Rng>(rng: &mut R, max_mult: u32) -> ResolutionData {
    let d = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=3);
    let ss = strata(rng, d, count, 3);
    let ms = ss.iter().map(|s| mults(rng, s.index_set.len(), max_mult)).collect();
    ResolutionData::new(d, ss, ms).expect("generated data is valid")
}

pub fn diagram<R: Rng>(rng: &mut R, max_components: usize, max_mult: u32) -> ResolutionDiagram {
    let d = rng.gen_range(max_components.max(1) as u32..=3.max(max_components as u32));
    let count = rng.gen_range(1..=3);
    let ss = strata(rng, d, count, max_components);
    let ps = ss.iter().map(|s| mults(rng, s.index_set.len(), max_mult)).collect();
    let qs = ss.iter().map(|s| mults(rng, s.index_set.len(), max_mult)).collect();
    ResolutionDiagram::new(d, ss, ps, qs).expect("generated diagram is valid")
}

/// A polynomial in `vars` with up to `max_terms` terms of partial degree
/// below 3.
pub fn poly<R: Rng>(rng: &mut R, vars: &[String], max_terms: usize) -> MultiPoly {
    let n = rng.gen_range(0..=max_terms);
    MultiPoly::from_terms(
        vars,
        (0..n).map(|_| {
            let m = (0..vars.len()).map(|_| rng.gen_range(0..3)).collect();
            (m, BigRational::from_integer(BigInt::from(rng.gen_range(-4i64..=4))))
        }),
    )
}

pub fn arc<R: Rng>(rng: &mut R, arity: usize, cap: usize) -> ArcJet {
    let rows = (0..arity)
        .map(|_| {
            (0..=cap).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-2i64..=2)))).collect()
        })
        .collect();
    ArcJet::from_rows(rows, cap)
}
