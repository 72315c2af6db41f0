//! Jacobian boundedness and the inverse mapping theorems over a resolution
//! diagram `M -> Γ`, `p: Γ -> X`, `q = f ∘ p: Γ -> Y`.
//!
//! Along a lifted arc with contact orders `e` on a stratum,
//! `ord_t jac_f = ord_t jac_{q∘σ} - ord_t jac_{p∘σ} = Σ (q_i - p_i) e_i`.
//! The theorems are not proved here. Each hypothesis is mapped to a
//! computable check, and a conclusion is emitted only when every check
//! passes.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grothendieck::MotiveSeries;
use crate::measure_engine::{
    compare_germ_measures, germ_measure, image_measure, ord_jac_on_stratum, ResolutionDiagram,
};
use crate::poly::{jacobian_entries_order, ArcJet, RationalEntry};

/// `ord_t jac_f` along arcs of contact `e` on stratum `stratum`.
pub fn ord_jac_f(diagram: &ResolutionDiagram, stratum: usize, e: &[u32]) -> Result<i64> {
    let p = diagram
        .p_mults()
        .get(stratum)
        .ok_or_else(|| Error::IndexMismatch(format!("no stratum {stratum}")))?;
    let q = &diagram.q_mults()[stratum];
    if let Some((index, &value)) = e.iter().enumerate().find(|(_, v)| **v < 1) {
        return Err(Error::BadContact { index, value });
    }
    let jp = ord_jac_on_stratum(p, e)?;
    let jq = ord_jac_on_stratum(q, e)?;
    Ok(jq as i64 - jp as i64)
}

/// A contact tuple on which a boundedness condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub stratum: String,
    pub contacts: Vec<u32>,
    pub ord_jac_f: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessVerdict {
    pub bounded_above: bool,
    pub bounded_below: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub above_witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub below_witness: Option<Witness>,
}

/// Contacts making `Σ c_i e_i < 0` when `c_j < 0`: `e_j = 1 + Σ_{i≠j} c_i^+`,
/// all other entries 1.
fn violating_contacts(c: &[i64], j: usize) -> Vec<u32> {
    let slack: i64 = c.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, v)| v.max(&0)).sum();
    let mut e = vec![1u32; c.len()];
    e[j] = u32::try_from(1 + slack).expect("multiplicities fit in u32");
    e
}

/// Bounded above iff `p_i <= q_i` on every stratum (the generator of the
/// `p`-side Jacobian ideal divides the `q`-side one); bounded below iff
/// `q_i <= p_i`.
///
/// ```
/// use motivic_core::measure_engine::{MultiplicityVector, ResolutionDiagram, SncStratum};
/// use motivic_core::resolution_analysis::check_boundedness;
/// use motivic_core::LaurentPoly;
///
/// // t -> (t^2, t^3) read as a map from the line onto the cusp
/// let origin = SncStratum { name: "0".into(), index_set: vec![1], class: LaurentPoly::one() };
/// let d = ResolutionDiagram::new(
///     1,
///     vec![origin],
///     vec![MultiplicityVector(vec![0])],
///     vec![MultiplicityVector(vec![1])],
/// )
/// .unwrap();
/// let v = check_boundedness(&d);
/// assert!(v.bounded_above && !v.bounded_below);
/// assert_eq!(v.below_witness.unwrap().contacts, vec![1]);
/// ```
pub fn check_boundedness(diagram: &ResolutionDiagram) -> BoundednessVerdict {
    let mut above_witness = None;
    let mut below_witness = None;
    for (k, ((s, p), q)) in diagram.strata().iter().zip(diagram.p_mults()).zip(diagram.q_mults()).enumerate()
    {
        let c: Vec<i64> = q.0.iter().zip(&p.0).map(|(a, b)| i64::from(*a) - i64::from(*b)).collect();
        let witness = |sign: i64| {
            let signed: Vec<i64> = c.iter().map(|v| sign * v).collect();
            signed.iter().position(|v| *v < 0).map(|j| {
                let contacts = violating_contacts(&signed, j);
                let ord = ord_jac_f(diagram, k, &contacts).expect("validated diagram");
                Witness { stratum: s.name.clone(), contacts, ord_jac_f: ord }
            })
        };
        if above_witness.is_none() {
            above_witness = witness(1);
        }
        if below_witness.is_none() {
            below_witness = witness(-1);
        }
    }
    BoundednessVerdict {
        bounded_above: above_witness.is_none(),
        bounded_below: below_witness.is_none(),
        above_witness,
        below_witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    InverseMapping,
    CompareMeasures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    InverseArcAnalytic,
    MeasureInequality,
    Inconclusive,
}

/// `leq_order` outcome in serializable form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

impl Comparison {
    fn phrase(self) -> &'static str {
        match self {
            Comparison::Less => "less than",
            Comparison::Equal => "equal to",
            Comparison::Greater => "greater than",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub mu_x: MotiveSeries,
    pub mu_y: MotiveSeries,
    pub comparison: Comparison,
    pub boundedness: BoundednessVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_measure: Option<MotiveSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift_measure: Option<MotiveSeries>,
}

/// Outcome of a certificate-checked theorem application.
///
/// `contradiction` is set when every hypothesis passed but a consequence
/// of the theorem failed on the supplied data: the inputs are inconsistent
/// (wrong measures or a diagram that does not resolve `f`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub hypotheses: Vec<HypothesisCheck>,
    pub conclusion: Conclusion,
    pub contradiction: bool,
    pub certificates: Certificates,
}

impl TheoremReport {
    pub fn all_hypotheses_passed(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck { name: name.into(), passed, detail: detail.into() }
}

fn witness_detail(w: &Option<Witness>) -> String {
    match w {
        None => "holds on every stratum".into(),
        Some(w) => format!(
            "fails on stratum `{}` at contacts {:?} (ord jac_f = {})",
            w.stratum, w.contacts, w.ord_jac_f
        ),
    }
}

fn same_to_precision(a: &MotiveSeries, b: &MotiveSeries) -> bool {
    let floor = a.floor().max(b.floor());
    a.truncate(floor) == b.truncate(floor)
}

/// Inverse mapping theorem: if `μ(L(X,x)) = μ(L(Y,y))` and `jac_f` is
/// bounded below, then `f^{-1}` is generically arc-analytic and `jac_f` is
/// bounded above.
///
/// Beyond the two hypotheses the report checks what the proof derives
/// from them: the lifted arcs carry the whole germ measure on both sides
/// and the Jacobian is bounded above.
pub fn inverse_mapping_report(
    diagram: &ResolutionDiagram,
    mu_x: &MotiveSeries,
    mu_y: &MotiveSeries,
) -> Result<TheoremReport> {
    let floor = mu_x.floor().max(mu_y.floor());
    let comparison = Comparison::from(compare_germ_measures(mu_x, mu_y)?);
    let boundedness = check_boundedness(diagram);
    let hypotheses = vec![
        check(
            "measures_equal",
            comparison == Comparison::Equal,
            format!("mu_x is {} mu_y", comparison.phrase()),
        ),
        check("bounded_below", boundedness.bounded_below, witness_detail(&boundedness.below_witness)),
    ];
    let image = image_measure(diagram, floor)?;
    let lift = germ_measure(&diagram.p_data(), floor)?;
    let mut conclusion = Conclusion::Inconclusive;
    let mut contradiction = false;
    if hypotheses.iter().all(|h| h.passed) {
        let consistent =
            same_to_precision(&image, mu_y) && same_to_precision(&lift, mu_x) && boundedness.bounded_above;
        if consistent {
            conclusion = Conclusion::InverseArcAnalytic;
        } else {
            contradiction = true;
        }
    }
    let report = TheoremReport {
        theorem: Theorem::InverseMapping,
        hypotheses,
        conclusion,
        contradiction,
        certificates: Certificates {
            mu_x: mu_x.truncate(floor),
            mu_y: mu_y.truncate(floor),
            comparison,
            boundedness,
            image_measure: Some(image),
            lift_measure: Some(lift),
        },
    };
    debug_assert!(
        report.conclusion != Conclusion::InverseArcAnalytic || report.certificates.boundedness.bounded_above
    );
    Ok(report)
}

/// Measure comparison theorem: if `jac_f` is bounded below then
/// `μ(L(X,x)) ⪯ μ(L(Y,y))`.
pub fn measure_comparison_report(
    diagram: &ResolutionDiagram,
    mu_x: &MotiveSeries,
    mu_y: &MotiveSeries,
) -> Result<TheoremReport> {
    let floor = mu_x.floor().max(mu_y.floor());
    let comparison = Comparison::from(compare_germ_measures(mu_x, mu_y)?);
    let boundedness = check_boundedness(diagram);
    let hypotheses =
        vec![check("bounded_below", boundedness.bounded_below, witness_detail(&boundedness.below_witness))];
    let mut conclusion = Conclusion::Inconclusive;
    let mut contradiction = false;
    if boundedness.bounded_below {
        if comparison == Comparison::Greater {
            contradiction = true;
        } else {
            conclusion = Conclusion::MeasureInequality;
        }
    }
    Ok(TheoremReport {
        theorem: Theorem::CompareMeasures,
        hypotheses,
        conclusion,
        contradiction,
        certificates: Certificates {
            mu_x: mu_x.truncate(floor),
            mu_y: mu_y.truncate(floor),
            comparison,
            boundedness,
            image_measure: None,
            lift_measure: None,
        },
    })
}

/// Result of probing the Jacobian matrix of a chart along finitely many
/// arcs.
///
/// A negative order disproves boundedness from above; nonnegative orders
/// on every probe are evidence only (`evidence_only` is then true).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeVerdict {
    pub bounded_above: bool,
    pub evidence_only: bool,
    /// Index of the first arc with negative order.
    pub witness: Option<usize>,
    pub orders: Vec<i64>,
}

/// Inner-Lipschitz probe: `f` is inner Lipschitz iff its Jacobian matrix is
/// bounded from above, i.e. every entry has order `>= 0` along every arc.
///
/// ```
/// use motivic_core::poly::{vars, ArcJet, MultiPoly, RationalEntry};
/// use motivic_core::resolution_analysis::inner_lipschitz_probe;
///
/// let v = vars(&["x"]);
/// let entry = RationalEntry {
///     numerator: MultiPoly::one(&v),
///     denominator: MultiPoly::parse("x", &v).unwrap(),
/// };
/// let arc = ArcJet::from_integer_rows(&[&[0, 1]], 4);
/// let verdict = inner_lipschitz_probe(&[entry], &[arc]).unwrap();
/// assert!(!verdict.bounded_above);
/// assert_eq!(verdict.orders, vec![-1]);
/// ```
pub fn inner_lipschitz_probe(entries: &[RationalEntry], arcs: &[ArcJet]) -> Result<ProbeVerdict> {
    let mut orders = Vec::with_capacity(arcs.len());
    for arc in arcs {
        let o = jacobian_entries_order(entries, arc)?;
        orders.push(o.finite().expect("entries order is exact"));
    }
    let witness = orders.iter().position(|o| *o < 0);
    Ok(ProbeVerdict { bounded_above: witness.is_none(), evidence_only: witness.is_none(), witness, orders })
}
