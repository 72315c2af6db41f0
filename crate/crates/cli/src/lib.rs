//! Command-line front end for `motivic-core`.
//!
//! Mathematical results are printed in their canonical text forms; theorem
//! reports are JSON. Exit codes: 0 success, 1 other failure, 2 schema or
//! parse error, 3 divergent integrand, 4 inconclusive report, 5 precision
//! exhausted.

pub mod input;
pub mod random;
mod selfcheck;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use motivic_core::measure_engine::{enumerate_integral, germ_measure, motivic_integral};
use motivic_core::poly::{compose, hypersurface_hx, jet_equations};
use motivic_core::resolution_analysis::{
    inverse_mapping_report, measure_comparison_report, Comparison, Conclusion, TheoremReport,
};
use motivic_core::{Error, MotiveSeries};

use input::{
    parse_arc, parse_at, parse_poly, parse_system, value_at, CheckMapPayload, ComparePayload, ComposePayload,
    HxPayload, IntegratePayload, JetsPayload, Kind, ProblemFile, ResolutionSpec, TheoremChoice,
    SCHEMA_VERSION,
};

pub const DEFAULT_FLOOR: i64 = -16;
pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("parse error in {path} at offset {offset}: {message}\n  {input}\n  {caret}", caret = caret(*offset))]
    Parse { path: String, input: String, offset: usize, message: String },
    #[error(transparent)]
    Engine(#[from] Error),
}

fn caret(offset: usize) -> String {
    format!("{}^", " ".repeat(offset))
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } | CliError::Parse { .. } => 2,
            CliError::Engine(e) => match e {
                Error::DivergentExponent { .. } => 3,
                Error::PrecisionExhausted { .. } => 5,
                Error::Parse(_)
                | Error::InvalidData(_)
                | Error::IndexMismatch(_)
                | Error::ArityMismatch { .. }
                | Error::BadContact { .. } => 2,
                _ => 1,
            },
            CliError::Io { .. } => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "motivic", version, about = "Real motivic measures on arc spaces")]
pub struct Cli {
    /// Precision floor: series are exact above u^floor [default: -16]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub floor: Option<i64>,
    /// Truncation cap for arc jets [default: 12]
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Output format [default: text, json for check-map]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a problem file `{schema, kind, options, payload}`
    Run { file: String },
    /// Equations of the jet space of V(generators) at a level
    Jets {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long)]
        level: usize,
        #[arg(required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
    },
    /// Generators of H_X for a hypersurface V(f)
    Hx {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// f(γ(t)) modulo t^(cap + 1); arc rows separated by `;`
    Compose {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        arc: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Germ measure from resolution data `{ambient_dim, strata}`
    Measure { file: String },
    /// Change-of-variables integral from `{resolution, alpha?}`
    Integrate {
        file: String,
        /// Sum contact tuples with Σ e_i <= E instead of the closed form
        #[arg(long)]
        e_max: Option<u32>,
    },
    /// Compare two germ measures given as series
    Compare {
        #[arg(allow_hyphen_values = true)]
        mu_x: String,
        #[arg(allow_hyphen_values = true)]
        mu_y: String,
    },
    /// Theorem report for a resolution diagram and two germ measures
    CheckMap { file: String },
    /// Randomized consistency checks of the engines
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Settings {
    floor: i64,
    cap: usize,
    e_max: Option<u32>,
    format: Option<Format>,
    seed: u64,
}

impl Settings {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Runs the command line `args` (program name first) without touching the
/// process streams.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let settings = Settings {
        floor: cli.floor.unwrap_or(DEFAULT_FLOOR),
        cap: cli.cap.unwrap_or(DEFAULT_CAP),
        e_max: None,
        format: cli.format,
        seed: cli.seed,
    };
    match dispatch(cli.command, settings, (cli.floor, cli.cap)) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if let CliError::Engine(Error::PrecisionExhausted { floor }) = &e {
                let deeper = (2 * floor).min(floor - 16);
                let _ =
                    writeln!(stderr, "hint: supply measures known below u^{floor}, e.g. --floor {deeper}");
            }
            Outcome { code: e.exit_code(), stdout: String::new(), stderr }
        }
    }
}

fn read(path: &str) -> Result<String, CliError> {
    let text =
        if path == "-" { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) };
    text.map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })
}

type Output = (i32, String);

fn dispatch(
    command: Command,
    mut s: Settings,
    flags: (Option<i64>, Option<usize>),
) -> Result<Output, CliError> {
    match command {
        Command::Run { file } => {
            let problem: ProblemFile = parse_at("", &read(&file)?)?;
            if problem.schema != SCHEMA_VERSION {
                return Err(CliError::Schema {
                    path: "schema".into(),
                    message: format!("unsupported version {} (expected {SCHEMA_VERSION})", problem.schema),
                });
            }
            s.floor = flags.0.or(problem.options.floor).unwrap_or(DEFAULT_FLOOR);
            s.cap = flags.1.or(problem.options.cap).unwrap_or(DEFAULT_CAP);
            s.e_max = problem.options.e_max_override;
            run_kind(problem.kind, problem.payload, &s)
        }
        Command::Jets { vars, level, generators } => {
            let payload = JetsPayload { vars, generators, level };
            jets(&payload, &s)
        }
        Command::Hx { vars, f } => hx(&HxPayload { vars, f }, &s),
        Command::Compose { vars, arc, f } => {
            let rows = arc
                .split(';')
                .map(|row| row.split(',').map(|c| input::Number::Text(c.trim().to_owned())).collect())
                .collect();
            compose_cmd(&ComposePayload { vars, f, arc: rows }, &s)
        }
        Command::Measure { file } => {
            let spec: ResolutionSpec = parse_at("", &read(&file)?)?;
            measure(&spec, &s)
        }
        Command::Integrate { file, e_max } => {
            let payload: IntegratePayload = parse_at("", &read(&file)?)?;
            s.e_max = e_max;
            integrate(&payload, &s)
        }
        Command::Compare { mu_x, mu_y } => {
            let parse = |t: &str, path: &str| {
                t.parse::<MotiveSeries>().map_err(|e| CliError::Parse {
                    path: path.into(),
                    input: t.into(),
                    offset: e.offset,
                    message: e.message,
                })
            };
            let (a, b) = (parse(&mu_x, "mu_x")?, parse(&mu_y, "mu_y")?);
            compare_series(&a, &b, &s)
        }
        Command::CheckMap { file } => {
            let payload: CheckMapPayload = parse_at("", &read(&file)?)?;
            check_map(&payload, "diagram", &s)
        }
        Command::Selfcheck { cases } => Ok(selfcheck::run(s.seed, cases)),
    }
}

fn run_kind(kind: Kind, payload: serde_json::Value, s: &Settings) -> Result<Output, CliError> {
    match kind {
        Kind::Jets => jets(&value_at("payload", payload)?, s),
        Kind::Hx => hx(&value_at("payload", payload)?, s),
        Kind::Compose => compose_cmd(&value_at("payload", payload)?, s),
        Kind::Measure => measure(&value_at("payload", payload)?, s),
        Kind::Integrate => integrate(&value_at("payload", payload)?, s),
        Kind::Compare => {
            let p: ComparePayload = value_at("payload", payload)?;
            compare_series(&p.mu_x.evaluate(s.floor)?, &p.mu_y.evaluate(s.floor)?, s)
        }
        Kind::CheckMap => check_map(&value_at("payload", payload)?, "payload.diagram", s),
    }
}

fn lines(items: &[String]) -> String {
    items.iter().map(|l| format!("{l}\n")).collect()
}

fn pretty(value: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("json values serialize"))
}

fn jets(p: &JetsPayload, s: &Settings) -> Result<Output, CliError> {
    let system = parse_system(&p.generators, &p.vars, "generators")?;
    let eqs = jet_equations(&system, p.level)?;
    let rendered = eqs.sorted_strings();
    Ok((
        0,
        match s.format_or(Format::Text) {
            Format::Text => lines(&rendered),
            Format::Json => pretty(&json!({
                "kind": "jets",
                "level": p.level,
                "vars": eqs.vars(),
                "equations": rendered,
            })),
        },
    ))
}

fn hx(p: &HxPayload, s: &Settings) -> Result<Output, CliError> {
    let f = parse_poly(&p.f, &p.vars, "f")?;
    let gens = hypersurface_hx(&f)?.sorted_strings();
    Ok((
        0,
        match s.format_or(Format::Text) {
            Format::Text => lines(&gens),
            Format::Json => pretty(&json!({ "kind": "hx", "f": f.to_string(), "generators": gens })),
        },
    ))
}

fn compose_cmd(p: &ComposePayload, s: &Settings) -> Result<Output, CliError> {
    let f = parse_poly(&p.f, &p.vars, "f")?;
    let arc = parse_arc(&p.arc, s.cap)?;
    let series = compose(&f, &arc)?;
    Ok((
        0,
        match s.format_or(Format::Text) {
            Format::Text => format!("{series}\n"),
            Format::Json => pretty(&json!({
                "kind": "compose",
                "cap": s.cap,
                "result": series.to_string(),
                "order": series.order().to_string(),
            })),
        },
    ))
}

fn series_output(kind: &str, series: &MotiveSeries, s: &Settings) -> Output {
    (
        0,
        match s.format_or(Format::Text) {
            Format::Text => format!("{series}\n"),
            Format::Json => pretty(&json!({
                "kind": kind,
                "floor": series.floor(),
                "result": series.to_string(),
            })),
        },
    )
}

fn measure(spec: &ResolutionSpec, s: &Settings) -> Result<Output, CliError> {
    let m = germ_measure(&spec.data()?, s.floor)?;
    Ok(series_output("measure", &m, s))
}

fn integrate(p: &IntegratePayload, s: &Settings) -> Result<Output, CliError> {
    let data = p.resolution.data()?;
    let alpha = p.alpha.clone().unwrap_or_else(|| data.zero_weights());
    let m = match s.e_max {
        Some(e) => enumerate_integral(&data, &alpha, s.floor, Some(e))?,
        None => motivic_integral(&data, &alpha, s.floor)?,
    };
    Ok(series_output("integrate", &m, s))
}

fn compare_series(a: &MotiveSeries, b: &MotiveSeries, s: &Settings) -> Result<Output, CliError> {
    let c = Comparison::from(motivic_core::measure_engine::compare_germ_measures(a, b)?);
    let word = name(&c);
    Ok((
        0,
        match s.format_or(Format::Text) {
            Format::Text => format!("{word}\n"),
            Format::Json => pretty(&json!({ "kind": "compare", "result": word })),
        },
    ))
}

fn report_text(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem: {}", name(&r.theorem));
    for h in &r.hypotheses {
        let verdict = if h.passed { "passed" } else { "failed" };
        let _ = writeln!(out, "hypothesis {}: {verdict} ({})", h.name, h.detail);
    }
    let _ = writeln!(out, "mu_x: {}", r.certificates.mu_x);
    let _ = writeln!(out, "mu_y: {}", r.certificates.mu_y);
    let _ = writeln!(out, "comparison: {}", name(&r.certificates.comparison));
    if let Some(m) = &r.certificates.image_measure {
        let _ = writeln!(out, "image measure: {m}");
    }
    if let Some(m) = &r.certificates.lift_measure {
        let _ = writeln!(out, "lift measure: {m}");
    }
    let b = &r.certificates.boundedness;
    let _ = writeln!(out, "bounded above: {}", b.bounded_above);
    let _ = writeln!(out, "bounded below: {}", b.bounded_below);
    let _ = writeln!(out, "conclusion: {}", name(&r.conclusion));
    let _ = writeln!(out, "contradiction: {}", r.contradiction);
    out
}

/// Serialized name of a unit enum variant.
fn name<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn check_map(p: &CheckMapPayload, path: &str, s: &Settings) -> Result<Output, CliError> {
    let diagram = p.diagram.diagram(path)?;
    let mu_x = p.mu_x.evaluate(s.floor)?;
    let mu_y = p.mu_y.evaluate(s.floor)?;
    let report = match p.theorem {
        TheoremChoice::InverseMapping => inverse_mapping_report(&diagram, &mu_x, &mu_y)?,
        TheoremChoice::CompareMeasures => measure_comparison_report(&diagram, &mu_x, &mu_y)?,
        TheoremChoice::Auto => {
            let ift = inverse_mapping_report(&diagram, &mu_x, &mu_y)?;
            if ift.conclusion != Conclusion::Inconclusive || ift.contradiction {
                ift
            } else {
                measure_comparison_report(&diagram, &mu_x, &mu_y)?
            }
        }
    };
    let code = if report.conclusion == Conclusion::Inconclusive { 4 } else { 0 };
    let text = match s.format_or(Format::Json) {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize")),
        Format::Text => report_text(&report),
    };
    Ok((code, text))
}
