//! Problem-file schemas. Every structure rejects unknown fields so typos
//! surface as schema errors with a field path.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use motivic_core::measure_engine::{
    germ_measure, MultiplicityVector, ResolutionData, ResolutionDiagram, SncStratum,
};
use motivic_core::poly::{ArcJet, MultiPoly, PolySystem};
use motivic_core::{LaurentPoly, MotiveSeries};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: u32,
    pub kind: Kind,
    #[serde(default)]
    pub options: Options,
    pub payload: serde_json::Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Jets,
    Hx,
    Compose,
    Measure,
    Integrate,
    Compare,
    CheckMap,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub floor: Option<i64>,
    pub cap: Option<usize>,
    pub e_max_override: Option<u32>,
}

/// Deserializes with the failing field path in the error, prefixed by
/// `prefix`.
pub fn parse_at<T: DeserializeOwned>(prefix: &str, text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| schema_error(prefix, e))
}

pub fn value_at<T: DeserializeOwned>(prefix: &str, value: serde_json::Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| schema_error(prefix, e))
}

fn schema_error<E: std::fmt::Display>(prefix: &str, e: serde_path_to_error::Error<E>) -> CliError {
    let inner = e.path().to_string();
    let path = match (prefix.is_empty(), inner == ".") {
        (true, _) => inner,
        (false, true) => prefix.to_owned(),
        (false, false) => format!("{prefix}.{inner}"),
    };
    CliError::Schema { path, message: e.into_inner().to_string() }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetsPayload {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub level: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HxPayload {
    pub vars: Vec<String>,
    pub f: String,
}

/// A rational written as a JSON integer or a `"p/q"` string.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            Number::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            Number::Text(s) => {
                s.trim().parse::<BigRational>().map_err(|_| format!("not a rational number: `{s}`"))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposePayload {
    pub vars: Vec<String>,
    pub f: String,
    /// Coefficient rows `c_0, c_1, ...`, one per variable.
    pub arc: Vec<Vec<Number>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub name: String,
    pub index_set: Vec<u32>,
    pub class: LaurentPoly,
    pub p_mults: Vec<u32>,
    #[serde(default)]
    pub q_mults: Option<Vec<u32>>,
}

/// `{ambient_dim, strata: [{name, index_set, class, p_mults, q_mults?}]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSpec {
    pub ambient_dim: u32,
    pub strata: Vec<StratumSpec>,
}

impl ResolutionSpec {
    fn strata(&self) -> Vec<SncStratum> {
        self.strata
            .iter()
            .map(|s| SncStratum {
                name: s.name.clone(),
                index_set: s.index_set.clone(),
                class: s.class.clone(),
            })
            .collect()
    }

    /// Resolution data of the source side (`p_mults`).
    pub fn data(&self) -> Result<ResolutionData, CliError> {
        let mults = self.strata.iter().map(|s| MultiplicityVector(s.p_mults.clone())).collect();
        Ok(ResolutionData::new(self.ambient_dim, self.strata(), mults)?)
    }

    pub fn diagram(&self, path: &str) -> Result<ResolutionDiagram, CliError> {
        let mut qs = Vec::with_capacity(self.strata.len());
        for (i, s) in self.strata.iter().enumerate() {
            match &s.q_mults {
                Some(q) => qs.push(MultiplicityVector(q.clone())),
                None => {
                    return Err(CliError::Schema {
                        path: format!("{path}.strata[{i}]"),
                        message: "missing field `q_mults`".into(),
                    })
                }
            }
        }
        let ps = self.strata.iter().map(|s| MultiplicityVector(s.p_mults.clone())).collect();
        Ok(ResolutionDiagram::new(self.ambient_dim, self.strata(), ps, qs)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratePayload {
    pub resolution: ResolutionSpec,
    /// Integrand weights `α`, one vector per stratum; zero when absent.
    #[serde(default)]
    pub alpha: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionRef {
    pub resolution: ResolutionSpec,
}

/// A germ measure: a series in the canonical grammar, or resolution data
/// whose germ measure is computed at the working floor.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    Series(MotiveSeries),
    Resolution(ResolutionRef),
}

impl MeasureSpec {
    pub fn evaluate(&self, floor: i64) -> Result<MotiveSeries, CliError> {
        match self {
            MeasureSpec::Series(s) => Ok(s.clone()),
            MeasureSpec::Resolution(r) => Ok(germ_measure(&r.resolution.data()?, floor)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparePayload {
    pub mu_x: MeasureSpec,
    pub mu_y: MeasureSpec,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremChoice {
    #[default]
    Auto,
    InverseMapping,
    CompareMeasures,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckMapPayload {
    pub diagram: ResolutionSpec,
    pub mu_x: MeasureSpec,
    pub mu_y: MeasureSpec,
    #[serde(default)]
    pub theorem: TheoremChoice,
}

pub fn parse_poly(text: &str, vars: &[String], path: &str) -> Result<MultiPoly, CliError> {
    MultiPoly::parse(text, vars).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        input: text.to_owned(),
        offset: e.offset,
        message: e.message,
    })
}

pub fn parse_system(texts: &[String], vars: &[String], path: &str) -> Result<PolySystem, CliError> {
    let mut gens = Vec::with_capacity(texts.len());
    for (i, t) in texts.iter().enumerate() {
        gens.push(parse_poly(t, vars, &format!("{path}[{i}]"))?);
    }
    Ok(PolySystem::new(vars, gens)?)
}

pub fn parse_arc(rows: &[Vec<Number>], cap: usize) -> Result<ArcJet, CliError> {
    let mut out = Vec::with_capacity(rows.len());
    for (j, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (i, c) in row.iter().enumerate() {
            r.push(
                c.to_rational().map_err(|message| CliError::Schema {
                    path: format!("payload.arc[{j}][{i}]"),
                    message,
                })?,
            );
        }
        out.push(r);
    }
    Ok(ArcJet::from_rows(out, cap))
}
