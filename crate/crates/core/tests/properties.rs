use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use motivic_core::jet_engine::{disjoint_union_measure, MeasurableDescriptor, StableSetDescriptor};
use motivic_core::measure_engine::{
    motivic_integral, MultiplicityVector, ResolutionData, ResolutionDiagram, SncStratum,
};
use motivic_core::poly::{compose, jet_equations, vars, ArcJet, MultiPoly, PolySystem};
use motivic_core::resolution_analysis::{check_boundedness, ord_jac_f};
use motivic_core::{LaurentPoly, MotiveSeries, VirtualDim};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

fn positive_class() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0i64..=3, -3i64..=3), 0..4).prop_map(|mut terms| {
        let top = terms.iter().map(|t| t.0).max().unwrap_or(0) + 1;
        terms.push((top, 1));
        LaurentPoly::from_terms(terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn domain_and_dimension(a in laurent(), b in laurent()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.is_zero(), a.is_zero() || b.is_zero());
        match (a.virtual_dim(), b.virtual_dim()) {
            (VirtualDim::Finite(x), VirtualDim::Finite(y)) => {
                prop_assert_eq!(ab.virtual_dim(), VirtualDim::Finite(x + y));
            }
            _ => prop_assert_eq!(ab.virtual_dim(), VirtualDim::NegInfinity),
        }
    }

    #[test]
    fn order_is_total_and_translation_invariant(a in laurent(), b in laurent(), c in laurent()) {
        let ab = a.cmp(&b);
        prop_assert_eq!(ab, b.cmp(&a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!((&a + &c).cmp(&(&b + &c)), ab);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn series_text_round_trips(a in laurent(), floor in -8i64..0) {
        let s = MotiveSeries::from_laurent(&a, floor);
        prop_assert_eq!(s.to_string().parse::<MotiveSeries>().unwrap(), s);
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn re_level_preserves_measure(level in 0u32..5, class in positive_class(), dim in 1u32..4, shift in 0u32..10) {
        let a = StableSetDescriptor::new(level, class, dim);
        let b = a.re_level(level + shift).unwrap();
        prop_assert_eq!(a.measure(), b.measure());
        prop_assert_eq!(a.virtual_dim(), b.virtual_dim());
    }

    #[test]
    fn disjoint_unions_add(classes in prop::collection::vec(positive_class(), 1..5), floor in -12i64..-2) {
        let parts: Vec<_> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| MeasurableDescriptor::exact(StableSetDescriptor::new(i as u32, c.clone(), 2)))
            .collect();
        let total = disjoint_union_measure(&parts, floor).unwrap();
        let expected: LaurentPoly = parts
            .iter()
            .map(|p| p.approximants()[0].set.measure())
            .fold(LaurentPoly::zero(), |acc, m| &acc + &m);
        prop_assert_eq!(total, MotiveSeries::from_laurent(&expected, floor));
    }
}

fn poly_over(v: &[String]) -> impl Strategy<Value = MultiPoly> {
    let n = v.len();
    let v = v.to_vec();
    prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..=3), 0..5).prop_map(move |ts| {
        MultiPoly::from_terms(
            &v,
            ts.into_iter().map(|(m, c)| (m, BigRational::from_integer(BigInt::from(c)))),
        )
    })
}

fn arc(n: usize, cap: usize) -> impl Strategy<Value = ArcJet> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cap + 1), n).prop_map(move |rows| {
        ArcJet::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
                .collect(),
            cap,
        )
    })
}

fn eval(p: &MultiPoly, point: &[BigRational]) -> BigRational {
    p.terms()
        .map(|(m, c)| {
            m.iter().zip(point).fold(c.clone(), |acc, (k, x)| acc * num_traits::pow(x.clone(), *k as usize))
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compose_is_a_ring_morphism(
        (f, g, gamma) in (1usize..4).prop_flat_map(|n| {
            let v = vars(&["x", "y", "z"][..n]);
            (poly_over(&v), poly_over(&v), arc(n, 5))
        })
    ) {
        let sum = compose(&(&f + &g), &gamma).unwrap();
        prop_assert_eq!(sum, compose(&f, &gamma).unwrap().add(&compose(&g, &gamma).unwrap()));
        let prod = compose(&(&f * &g), &gamma).unwrap();
        prop_assert_eq!(prod, compose(&f, &gamma).unwrap().mul(&compose(&g, &gamma).unwrap()));
        let one = MultiPoly::one(f.vars());
        prop_assert!(compose(&one, &gamma).unwrap().sub(&motivic_core::poly::TruncSeries::constant(BigRational::one(), 5)).is_zero());
    }

    #[test]
    fn jet_equations_vanish_exactly_on_liftable_jets(
        (h, gamma, c, level) in (1usize..4).prop_flat_map(|n| {
            let v = vars(&["x", "y", "z"][..n]);
            (poly_over(&v), arc(n, 4), -2i64..=2, 0usize..4)
        })
    ) {
        // f = h * (x - c) vanishes to high order along arcs whose x starts near c
        let v = h.vars().to_vec();
        let shifted = &MultiPoly::var(&v, 0) - &MultiPoly::constant(&v, BigRational::from_integer(c.into()));
        let f = &h * &shifted;
        let system = PolySystem::new(&v, vec![f.clone()]).unwrap();
        let jets = jet_equations(&system, level).unwrap();
        let point: Vec<BigRational> = gamma
            .components()
            .iter()
            .flat_map(|s| s.coeffs()[..=level].to_vec())
            .collect();
        let satisfied = jets.generators().iter().all(|e| eval(e, &point).is_zero());
        let order = compose(&f, &gamma).unwrap().order().lower_bound();
        prop_assert_eq!(satisfied, order > level as i64);
    }
}

fn diagram(strata: Vec<(Vec<u32>, Vec<u32>)>) -> ResolutionDiagram {
    let mut ss = Vec::new();
    let mut ps = Vec::new();
    let mut qs = Vec::new();
    for (k, (p, q)) in strata.into_iter().enumerate() {
        ss.push(SncStratum {
            name: format!("S{k}"),
            index_set: (1..=p.len() as u32).collect(),
            class: LaurentPoly::one(),
        });
        ps.push(MultiplicityVector(p));
        qs.push(MultiplicityVector(q));
    }
    ResolutionDiagram::new(3, ss, ps, qs).unwrap()
}

fn stratum_mults() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    (0usize..=3).prop_flat_map(|k| (prop::collection::vec(0u32..6, k), prop::collection::vec(0u32..6, k)))
}

/// Every contact vector in `{1..=b}^k`.
fn box_vectors(k: usize, b: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boundedness_matches_sign_checks_on_a_sound_box(strata in prop::collection::vec(stratum_mults(), 1..4)) {
        let d = diagram(strata.clone());
        let verdict = check_boundedness(&d);
        let mut above = true;
        let mut below = true;
        for (k, (p, q)) in strata.iter().enumerate() {
            let spread = p.iter().zip(q).map(|(a, b)| a.abs_diff(*b)).max().unwrap_or(0);
            for e in box_vectors(p.len(), 1 + p.len() as u32 * spread) {
                let o = ord_jac_f(&d, k, &e).unwrap();
                above &= o >= 0;
                below &= o <= 0;
            }
        }
        prop_assert_eq!(verdict.bounded_above, above);
        prop_assert_eq!(verdict.bounded_below, below);
        if let Some(w) = verdict.above_witness {
            prop_assert!(w.ord_jac_f < 0);
        }
        if let Some(w) = verdict.below_witness {
            prop_assert!(w.ord_jac_f > 0);
        }
    }

    #[test]
    fn integrals_add_over_strata(strata in prop::collection::vec(stratum_mults(), 1..4), floor in -14i64..-3) {
        let data = |sel: &[(Vec<u32>, Vec<u32>)]| {
            let d = diagram(sel.to_vec());
            d.p_data()
        };
        let whole: ResolutionData = data(&strata);
        let total = motivic_integral(&whole, &whole.zero_weights(), floor).unwrap();
        let mut sum = MotiveSeries::zero(floor);
        for s in &strata {
            let part = data(std::slice::from_ref(s));
            sum = &sum + &motivic_integral(&part, &part.zero_weights(), floor).unwrap();
        }
        prop_assert_eq!(total, sum);
    }
}
