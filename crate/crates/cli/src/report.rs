//! `spectrum` and `bound` reports, as JSON or Markdown.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use spinorlab::flat::{
    dirac_witten, euler_operator, fundamental_dirac, twisted_dirac, CircleSpinStructure, MeanCurvatureData, Model,
    ModeOperator, SpinStructure, SpectrumReport,
};
use spinorlab::scalar;
use spinorlab::sphere::{closed_form_spectrum, theorem_bound, BoundInput, BoundReport};

use crate::SCHEMA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Trivial,
    Nontrivial,
}

impl From<Structure> for SpinStructure {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Trivial => SpinStructure::Trivial,
            Structure::Nontrivial => SpinStructure::Nontrivial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    /// Dirac operator of the circle itself (circle only).
    Fundamental,
    /// `D_M^{ΣN}` on the restricted ambient spinor bundle.
    TwistedDirac,
    /// `d + δ` on complex forms.
    Euler,
    /// `D̂ = D_M^{ΣN} - (n/2)H·`.
    DiracWitten,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CompareModel {
    Sphere,
    Torus,
    Circle,
}

/// A rendered report and the exit code it calls for.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub exit_code: i32,
}

/// Invalid parameters; the binary exits with 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn with_schema(mut value: Value, command: &str) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("command".into(), json!(command));
    }
    value
}

fn operator_for(model: Model, operator: Operator, cutoff: i64) -> Result<ModeOperator, UsageError> {
    Ok(match (model, operator) {
        (Model::Circle(s), Operator::Fundamental) => fundamental_dirac(s.tangent, cutoff)?,
        (Model::Torus(_), Operator::Fundamental) => {
            return Err(UsageError("the fundamental operator is only defined on the circle".into()))
        }
        (_, Operator::TwistedDirac) => twisted_dirac(model, cutoff)?,
        (_, Operator::Euler) => euler_operator(model, cutoff)?,
        (Model::Circle(_), Operator::DiracWitten) => dirac_witten(model, cutoff, &MeanCurvatureData::circle())?,
        (Model::Torus(n), Operator::DiracWitten) => dirac_witten(model, cutoff, &MeanCurvatureData::torus(n))?,
    })
}

/// Spectrum of one flat-model operator, or of its square.
pub fn flat_spectrum(
    model: Model,
    operator: Operator,
    cutoff: i64,
    squared: bool,
    tolerance: f64,
) -> Result<SpectrumReport, UsageError> {
    let mut op = operator_for(model, operator, cutoff)?;
    if squared {
        op = op.squared()?;
    }
    Ok(op.spectrum_report(tolerance)?)
}

pub fn render_flat(report: &SpectrumReport, format: Format) -> String {
    match format {
        Format::Json => json_text(&with_schema(serde_json::to_value(report).expect("report serializes"), "spectrum")),
        Format::Md => {
            let mut s = String::new();
            let structure = report.structure.map(|t| format!(", structure {t:?}").to_lowercase()).unwrap_or_default();
            let _ = writeln!(s, "## {} on the {:?} model (n = {}, K = {}{})", report.operator, report.model, report.n, report.cutoff, structure);
            let _ = writeln!(s);
            let _ = writeln!(s, "| eigenvalue | multiplicity |");
            let _ = writeln!(s, "|---:|---:|");
            for line in &report.eigenvalues {
                let _ = writeln!(s, "| {} | {} |", format_value(line.value, report.tolerance), line.multiplicity);
            }
            s
        }
    }
}

/// Rounds away eigensolver noise below the tolerance.
fn format_value(x: f64, tol: f64) -> String {
    let y = if x.abs() < tol { 0.0 } else { x };
    format!("{y:.12}").trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn sphere_spectrum(n: u64, p: u64, kmax: u64, format: Format) -> Result<String, UsageError> {
    let lines = closed_form_spectrum(n, p, kmax)?;
    Ok(match format {
        Format::Json => json_text(&with_schema(
            json!({ "model": "sphere", "n": n, "p": p, "kmax": kmax, "eigenvalues": lines }),
            "spectrum",
        )),
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "## closed {p}-forms on S^{n}");
            let _ = writeln!(s);
            let _ = writeln!(s, "| k | eigenvalue | multiplicity |");
            let _ = writeln!(s, "|---:|---:|---:|");
            for l in &lines {
                let m = l.multiplicity.as_ref().map_or_else(|| "-".to_string(), |m| m.to_string());
                let _ = writeln!(s, "| {} | {} | {} |", l.k, l.eigenvalue, m);
            }
            s
        }
    })
}

/// Parameters of the `bound` command.
#[derive(Clone, Debug)]
pub struct BoundRequest {
    pub n: u64,
    pub alpha2: String,
    pub h_mean_sq: Option<String>,
    pub h_sup_sq: Option<String>,
    pub big_n: u64,
    pub compare: Option<CompareModel>,
    pub cutoff: i64,
    pub structure: Structure,
    pub tolerance: f64,
}

fn parse_q(name: &str, text: &str) -> Result<BigRational, UsageError> {
    scalar::parse_rational(text).ok_or_else(|| UsageError(format!("--{name}: not a rational number: {text:?}")))
}

/// `λ_N` of the model's `(D_M^{ΣN})²`, which is the Hodge Laplacian when
/// the spin structures are identified.
fn model_lambda(req: &BoundRequest) -> Result<(String, f64, Option<BigRational>), UsageError> {
    let idx = req.big_n as usize;
    match req.compare.expect("called with a model") {
        CompareModel::Sphere => {
            if req.n.is_multiple_of(2) {
                return Err(UsageError("the sphere comparison needs odd n".into()));
            }
            let p = req.n.div_ceil(2);
            let lines = closed_form_spectrum(req.n, p, 0)?;
            let first = &lines[0];
            let mult = first.multiplicity.clone().expect("k = 0 carries a multiplicity");
            if BigRational::from_integer(mult.clone().into()) < BigRational::from_integer(req.big_n.into()) {
                return Err(UsageError(format!(
                    "N = {} exceeds the multiplicity {} of the first closed {p}-form eigenvalue",
                    req.big_n, mult
                )));
            }
            let exact = BigRational::from_integer(first.eigenvalue.clone().into());
            let value = exact.to_f64().unwrap_or(f64::INFINITY);
            Ok((format!("sphere S^{} (closed {p}-forms)", req.n), value, Some(exact)))
        }
        CompareModel::Torus => {
            let spec = flat_spectrum(Model::Torus(req.n as usize), Operator::TwistedDirac, req.cutoff, true, req.tolerance)?;
            let value = nth(&spec, idx)?;
            Ok((format!("flat torus T^{} (K = {})", req.n, req.cutoff), value, None))
        }
        CompareModel::Circle => {
            if req.n != 1 {
                return Err(UsageError("the circle comparison needs n = 1".into()));
            }
            let model = Model::Circle(CircleSpinStructure::new(req.structure.into()));
            let spec = flat_spectrum(model, Operator::TwistedDirac, req.cutoff, true, req.tolerance)?;
            let value = nth(&spec, idx)?;
            Ok((format!("unit circle (K = {})", req.cutoff), value, None))
        }
    }
}

fn nth(spec: &SpectrumReport, idx: usize) -> Result<f64, UsageError> {
    let mut seen = 0;
    for line in &spec.eigenvalues {
        seen += line.multiplicity;
        if seen >= idx {
            return Ok(line.value);
        }
    }
    Err(UsageError(format!("N = {idx} exceeds the {seen} eigenvalues within the cutoff")))
}

pub fn bound(req: &BoundRequest, format: Format) -> Result<Rendered, UsageError> {
    let input = BoundInput {
        n: req.n,
        alpha2: parse_q("alpha2", &req.alpha2)?,
        h_mean_sq: req.h_mean_sq.as_deref().map(|t| parse_q("h-mean-sq", t)).transpose()?,
        h_sup_sq: req.h_sup_sq.as_deref().map(|t| parse_q("h-sup-sq", t)).transpose()?,
        big_n: req.big_n,
    };
    let report: BoundReport = theorem_bound(&input)?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["alpha2"] = json!(scalar::rational_string(&input.alpha2));
    if report.vacuous {
        value["regime"] = json!("vacuous: the bound is negative, so no operator meets these hypotheses");
    }
    let mut exit_code = 0;
    let mut comparison = None;
    if req.compare.is_some() {
        let (model, lambda, exact) = model_lambda(req)?;
        let (margin_text, margin) = match &exact {
            Some(l) => {
                let m = l - &report.bound_value;
                (scalar::rational_string(&m), m.to_f64().unwrap_or(f64::INFINITY))
            }
            None => {
                let m = lambda - scalar::rational_to_f64(&report.bound_value);
                let m = if m.abs() < req.tolerance { 0.0 } else { m };
                (format_value(m, req.tolerance), m)
            }
        };
        let holds = match &exact {
            Some(l) => (l - &report.bound_value) <= BigRational::zero(),
            None => margin <= req.tolerance,
        };
        if !holds {
            exit_code = 1;
        }
        let lambda_text = exact.as_ref().map_or_else(|| format_value(lambda, req.tolerance), scalar::rational_string);
        comparison = Some((model.clone(), lambda_text.clone(), margin_text.clone(), holds));
        value["comparison"] = json!({
            "model": model,
            "lambda_n": lambda_text,
            "margin": margin_text,
            "holds": holds,
        });
    }
    let text = match format {
        Format::Json => json_text(&with_schema(value, "bound")),
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "## eigenvalue bound (n = {}, α² = {}, N = {})", req.n, scalar::rational_string(&input.alpha2), req.big_n);
            let _ = writeln!(s);
            let _ = writeln!(s, "| quantity | value |");
            let _ = writeln!(s, "|---|---|");
            let _ = writeln!(s, "| branch | {:?} |", report.branch);
            let _ = writeln!(s, "| bound on λ_N | {} |", report.bound);
            let _ = writeln!(s, "| closed-form count [(N+1)/2] | {} |", report.half_n);
            if let Some(e) = &report.extended_bound {
                let _ = writeln!(s, "| bound on λ_{} | {} |", report.extended_index, e);
            }
            let _ = writeln!(s, "| vacuous | {} |", report.vacuous);
            if let Some((model, lambda, margin, holds)) = comparison {
                let _ = writeln!(s, "| model | {model} |");
                let _ = writeln!(s, "| λ_N | {lambda} |");
                let _ = writeln!(s, "| margin λ_N - bound | {margin} |");
                let _ = writeln!(s, "| holds | {holds} |");
            }
            s
        }
    };
    Ok(Rendered { text, exit_code })
}
