//! Job execution behind the `mzeta` binary.
//!
//! A [`JobSpec`] names a command and carries its JSON payload. [`run`]
//! validates the payload, runs the computation and returns a JSON report
//! with the inputs echoed back, plus the process exit code: `0` on success,
//! `1` for invalid input, `2` when the library reports a domain error.

pub mod inputs;

use std::path::PathBuf;
use std::time::Instant;

use motivic_zeta::oracle::{
    closed_point_counts, divisor_counts_from_point_counts, effective_divisor_series, to_big, verify_model,
    weil_zeta_from_counts, OracleError, DEFAULT_BUDGET,
};
use motivic_zeta::sb::{index_ladder, sb_filtration_class, sb_isotypic_class, sb_reduced_class, SbClassData, SbError};
use motivic_zeta::zeta::{
    zero_dim_default_precision, zeta_pointed_curve, zeta_pointless_curve, zeta_projective_space,
    zeta_zero_dim_counting, CurveZeta, PointedCurveData, PointlessCurveData, ZetaError, MAX_PRECISION,
};
use motivic_zeta::{RationalForm, RingError, SeriesError};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use inputs::{element, elements};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ZetaPn,
    ZetaPointed,
    ZetaPointless,
    ZetaZerodim,
    SbLadder,
    SbReduce,
    SbFilter,
    Count,
    Weil,
    Verify,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::ZetaPn => "zeta-pn",
            Command::ZetaPointed => "zeta-pointed",
            Command::ZetaPointless => "zeta-pointless",
            Command::ZetaZerodim => "zeta-zerodim",
            Command::SbLadder => "sb-ladder",
            Command::SbReduce => "sb-reduce",
            Command::SbFilter => "sb-filter",
            Command::Count => "count",
            Command::Weil => "weil",
            Command::Verify => "verify",
        }
    }
}

/// One unit of work. As a file:
///
/// ```json
/// {"command": "sb-reduce", "inputs": {"full": "1+L+L^2", "r": 1, "d": 3}}
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub inputs: Value,
    /// Number of series coefficients; each command has its own default.
    pub precision: Option<usize>,
    pub output_path: Option<PathBuf>,
    /// Cap on field evaluations during point enumeration.
    pub budget: Option<u64>,
    /// Adds wall-clock time to the report, which then differs between runs.
    #[serde(default)]
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("{message}")]
    Usage { name: &'static str, message: String },
    #[error("{message}")]
    Domain { name: &'static str, message: String },
}

impl JobError {
    pub fn name(&self) -> &'static str {
        match self {
            JobError::Usage { name, .. } | JobError::Domain { name, .. } => name,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Usage { .. } => 1,
            JobError::Domain { .. } => 2,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        JobError::Usage {
            name: "Usage",
            message: message.into(),
        }
    }

    fn domain(name: &'static str, message: impl ToString) -> Self {
        JobError::Domain {
            name,
            message: message.to_string(),
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for JobError {
            fn from(e: $t) -> Self {
                JobError::domain(e.name(), &e)
            }
        }
    )*};
}

domain_errors!(RingError, SeriesError, ZetaError, SbError, OracleError);

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

/// Exact JSON number for an arbitrary-size integer.
pub fn number(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

fn numbers(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(number).collect())
}

fn texts<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| Value::String(x.to_string())).collect())
}

fn payload<T: for<'de> Deserialize<'de>>(inputs: &Value) -> Result<T, JobError> {
    let inputs = if inputs.is_null() {
        Value::Object(Map::new())
    } else {
        inputs.clone()
    };
    serde_json::from_value(inputs).map_err(|e| JobError::Usage {
        name: "InvalidInput",
        message: e.to_string(),
    })
}

fn check_precision(n: usize) -> Result<usize, JobError> {
    if n == 0 || n > MAX_PRECISION {
        return Err(JobError::usage(format!(
            "precision must be between 1 and {MAX_PRECISION}, got {n}"
        )));
    }
    Ok(n)
}

fn form_json(form: &RationalForm, precision: usize) -> Result<Value, JobError> {
    let denominator: Vec<Value> = form.denominator().iter().map(|f| json!([f.l_exp, f.t_exp])).collect();
    let expansion = form.expand(precision)?;
    Ok(json!({
        "numerator": form.numerator().to_string(),
        "numerator_coefficients": texts(form.numerator().coeffs()),
        "denominator": denominator,
        "form": form.to_string(),
        "expansion": texts(expansion.coeffs()),
    }))
}

fn curve_zeta_json(zeta: &CurveZeta, precision: usize) -> Result<Value, JobError> {
    let mut v = form_json(&zeta.form, precision)?;
    v["degree_bound"] = json!(zeta.degree_bound);
    v["numerator_degree"] = json!(zeta.numerator_degree());
    v["attains_bound"] = json!(zeta.attains_bound());
    Ok(v)
}

/// Runs a job. The report always echoes the command and inputs; it holds
/// either `result` or `error` with the structured error name.
pub fn run(job: &JobSpec) -> Outcome {
    let start = Instant::now();
    let computed = execute(job);
    let elapsed = start.elapsed();
    let mut report = Map::new();
    report.insert("command".to_owned(), json!(job.command.as_str()));
    report.insert("inputs".to_owned(), job.inputs.clone());
    let exit_code = match computed {
        Ok((precision, result)) => {
            if let Some(p) = precision {
                report.insert("precision".to_owned(), json!(p));
            }
            report.insert("result".to_owned(), result);
            0
        }
        Err(e) => {
            report.insert("error".to_owned(), json!({"name": e.name(), "message": e.to_string()}));
            e.exit_code()
        }
    };
    if job.timing {
        report.insert("timing".to_owned(), json!({"elapsed_ms": elapsed.as_secs_f64() * 1e3}));
    }
    Outcome {
        exit_code,
        report: Value::Object(report),
    }
}

type Computed = (Option<usize>, Value);

fn execute(job: &JobSpec) -> Result<Computed, JobError> {
    let precision = |default: usize| check_precision(job.precision.unwrap_or(default));
    let budget = job.budget.unwrap_or(DEFAULT_BUDGET);
    match job.command {
        Command::ZetaPn => {
            let i: inputs::ZetaPn = payload(&job.inputs)?;
            let n = precision(2 * i.n as usize + 6)?;
            let form = zeta_projective_space(i.n);
            Ok((Some(n), form_json(&form, n)?))
        }
        Command::ZetaPointed => {
            let i: inputs::Pointed = payload(&job.inputs)?;
            let data = PointedCurveData::new(i.genus, elements(&i.low_classes)?, element(&i.pic0)?)?;
            let n = precision(data.default_precision())?;
            let zeta = zeta_pointed_curve(&data, n)?;
            Ok((Some(n), curve_zeta_json(&zeta, n)?))
        }
        Command::ZetaPointless => {
            let i: inputs::Pointless = payload(&job.inputs)?;
            let data = PointlessCurveData::new(i.genus, i.cycle_degree, elements(&i.sym_classes)?)?;
            let n = precision(data.default_precision())?;
            let zeta = zeta_pointless_curve(&data, n)?;
            let mut v = curve_zeta_json(&zeta, n)?;
            let window: Vec<Value> = data
                .window_classes()
                .iter()
                .map(|(m, c)| json!({"m": m, "class": c.to_string()}))
                .collect();
            v["window"] = Value::Array(window);
            Ok((Some(n), v))
        }
        Command::ZetaZerodim => {
            let i: inputs::ZeroDim = payload(&job.inputs)?;
            let form = zeta_zero_dim_counting(&i.degrees)?;
            let n = precision(zero_dim_default_precision(&i.degrees))?;
            let counts: Vec<BigInt> = form.expand(n)?.coeffs().iter().map(|c| c.constant_term()).collect();
            let mut v = form_json(&form, n)?;
            v["counts"] = numbers(&counts);
            v["level"] = json!("counting");
            Ok((Some(n), v))
        }
        Command::SbLadder => {
            let i: inputs::SbLadder = payload(&job.inputs)?;
            let data = SbClassData::new(element(&i.p)?, i.r, i.d)?;
            Ok((
                None,
                json!({
                    "class": sb_isotypic_class(&data).to_string(),
                    "ladder": index_ladder(i.r, i.d)?.to_string(),
                    "fiber_dimension": data.fiber_dimension(),
                }),
            ))
        }
        Command::SbReduce => {
            let i: inputs::SbReduce = payload(&job.inputs)?;
            let reduced = sb_reduced_class(&element(&i.full)?, i.r, i.d)?;
            Ok((None, json!({"reduced": reduced.to_string()})))
        }
        Command::SbFilter => {
            let i: inputs::SbFilter = payload(&job.inputs)?;
            let f = sb_filtration_class(&element(&i.c1)?, i.r1, &element(&i.c3)?, i.r3);
            Ok((None, json!({"class": f.class.to_string(), "symmetric": f.symmetric})))
        }
        Command::Count => {
            let i: inputs::Count = payload(&job.inputs)?;
            let model = i.model.build()?;
            let len = i.len.unwrap_or((2 * model.genus()).max(1));
            if len == 0 {
                return Err(JobError::usage("len must be positive"));
            }
            let counts = to_big(&model.point_counts(len, budget)?);
            let closed = closed_point_counts(&counts)?;
            let by_product = effective_divisor_series(&closed, counts.len() + 1);
            let by_exp = divisor_counts_from_point_counts(&counts)?;
            Ok((
                None,
                json!({
                    "q": model.q(),
                    "kind": model.kind().as_str(),
                    "genus": model.genus(),
                    "point_counts": numbers(&counts),
                    "closed_points": numbers(&closed),
                    "divisor_counts": {
                        "product": numbers(&by_product),
                        "exp": numbers(&by_exp),
                        "agree": by_product == by_exp,
                    },
                }),
            ))
        }
        Command::Weil => {
            let i: inputs::Weil = payload(&job.inputs)?;
            let (counts, q, genus) = match (&i.model, &i.counts) {
                (Some(spec), None) if i.q.is_none() => {
                    let model = spec.build()?;
                    let genus = i.genus.unwrap_or(model.genus());
                    let len = (2 * genus).max(1);
                    (model.point_counts(len, budget)?, model.q(), genus)
                }
                (None, Some(counts)) => {
                    let (Some(q), Some(genus)) = (i.q, i.genus) else {
                        return Err(JobError::usage("counts need both q and genus"));
                    };
                    (counts.clone(), q, genus)
                }
                _ => return Err(JobError::usage("give either a model or counts with q and genus")),
            };
            let profile = weil_zeta_from_counts(&to_big(&counts), q, genus)?;
            let n = precision(2 * genus as usize + 3)?;
            Ok((
                Some(n),
                json!({
                    "q": q,
                    "genus": genus,
                    "point_counts": counts,
                    "lpoly": numbers(profile.lpoly()),
                    "pic0_order": number(&profile.pic0_order()),
                    "divisor_counts": numbers(&profile.divisor_counts(n)),
                }),
            ))
        }
        Command::Verify => {
            let i: inputs::Verify = payload(&job.inputs)?;
            let model = i.model.build()?;
            let n = precision(4 * model.genus() as usize + 8)?;
            let v = verify_model(&model, n, budget)?;
            let assignment: Map<String, Value> = v.assignment.iter().map(|(s, c)| (s.to_string(), number(c))).collect();
            Ok((
                Some(n),
                json!({
                    "verdict": v.report.verdict(),
                    "checked_coefficients": v.report.checked_coefficients,
                    "first_mismatch": v.report.first_mismatch,
                    "q": model.q(),
                    "genus": model.genus(),
                    "construction": if v.cycle_degree == 1 { "pointed" } else { "pointless" },
                    "cycle_degree": v.cycle_degree,
                    "enumerated_counts": v.enumerated,
                    "lpoly": numbers(v.profile.lpoly()),
                    "assignment": assignment,
                    "divisor_routes_agree": v.routes_agree(),
                    "symbolic": numbers(&v.report.symbolic),
                    "oracle": numbers(&v.report.oracle),
                    "zeta": curve_zeta_json(&v.zeta, n)?,
                }),
            ))
        }
    }
}
