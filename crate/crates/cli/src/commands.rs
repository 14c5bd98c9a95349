//! Subcommand bodies. Each returns the full stdout text so the binary and the
//! tests share one code path.

use std::fmt::Write as _;
use std::path::Path;

use exceptional_core::interpolation::InterpolationError;
use exceptional_core::{
    analyze_with_table, descend, enumerate_minus_one, is_minus_one_descent, is_minus_one_inductive,
    orbit, orbit_size, Certificate, ClassifyError, Condition, DescentError, DescentOutcome,
    DivisorClass, EnumerationTable, LinearSystem, ObstructionReport, ReductionTrace, Verdict,
};
use serde::Serialize;
use thiserror::Error;

use crate::cache::{self, CacheError};
use crate::literal::{parse_class, LiteralError};

pub const SCHEMA_ID: &str = "exceptional/v1";
pub const SCHEMA: &str = include_str!("../schema/output-v1.schema.json");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Literal(#[from] LiteralError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 3,
            _ => 2,
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::InsufficientTable { .. } => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum MethodArg {
    #[default]
    Descent,
    Inductive,
    Both,
}

/// Where tables come from and go to.
#[derive(Debug, Clone, Copy, Default)]
pub struct CacheOptions<'a> {
    pub path: Option<&'a Path>,
    pub verify: bool,
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn restrict(table: &EnumerationTable, max_degree: i64) -> EnumerationTable {
    EnumerationTable {
        n: table.n,
        max_degree,
        classes_by_degree: table
            .classes_by_degree
            .range(..=max_degree)
            .map(|(d, b)| (*d, b.clone()))
            .collect(),
    }
}

/// Loads, extends and saves the table for `n` points. A cache for a
/// different `n` is left alone unless `claim` is set, in which case it is
/// replaced.
pub fn obtain_table(
    n: usize,
    max_degree: i64,
    cache_opts: CacheOptions<'_>,
    claim: bool,
) -> Result<EnumerationTable, CliError> {
    let max_degree = max_degree.max(0);
    let Some(path) = cache_opts.path else {
        return Ok(enumerate_minus_one(n, max_degree)?);
    };
    let existing = if path.exists() {
        match cache::read_header(path) {
            Some(h) if h.n == n => Some(cache::load(path, cache_opts.verify)?),
            Some(_) if !claim => return Ok(enumerate_minus_one(n, max_degree)?),
            Some(_) => None,
            None => {
                // surfaces the parse error
                cache::load(path, false)?;
                None
            }
        }
    } else {
        None
    };
    let mut table = match existing {
        Some(t) if t.max_degree >= max_degree => return Ok(restrict(&t, max_degree)),
        Some(t) => t,
        None => enumerate_minus_one(n, 0)?,
    };
    table.extend_to(max_degree)?;
    cache::write(path, &table)?;
    Ok(table)
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    schema: &'static str,
    command: &'static str,
    literal: String,
    class: &'a DivisorClass,
    is_minus_one: bool,
    agree: Option<bool>,
    verdicts: &'a [Verdict],
}

pub fn check(
    literal: &str,
    method: MethodArg,
    json: bool,
    cache_opts: CacheOptions<'_>,
) -> Result<String, CliError> {
    let class = parse_class(literal)?;
    let mut verdicts = Vec::new();
    if matches!(method, MethodArg::Descent | MethodArg::Both) {
        verdicts.push(is_minus_one_descent(&class)?);
    }
    if matches!(method, MethodArg::Inductive | MethodArg::Both) {
        let table = obtain_table(class.len(), class.degree - 1, cache_opts, false)?;
        verdicts.push(is_minus_one_inductive(&class, &table)?);
    }
    let agree = (verdicts.len() == 2).then(|| verdicts[0].is_minus_one == verdicts[1].is_minus_one);
    if agree == Some(false) {
        return Err(CliError::Internal(format!(
            "descent and inductive classifiers disagree on {class}"
        )));
    }
    if json {
        return to_json(&CheckDoc {
            schema: SCHEMA_ID,
            command: "check",
            literal: class.to_string(),
            class: &class,
            is_minus_one: verdicts[0].is_minus_one,
            agree,
            verdicts: &verdicts,
        });
    }
    let mut out = class_header(&class);
    for v in &verdicts {
        out.push('\n');
        out.push_str(&render_verdict(v));
    }
    if agree == Some(true) {
        out.push_str("\nagreement  descent and inductive verdicts agree\n");
    }
    Ok(out)
}

fn class_header(c: &DivisorClass) -> String {
    format!(
        "class      {c}\ndivisor    {}\nC.C        {}\ngenus      {}\n",
        c.divisor_notation(),
        c.self_intersection(),
        c.arithmetic_genus()
    )
}

fn yes_no(is: bool) -> &'static str {
    if is {
        "IS a (-1)-class"
    } else {
        "NOT a (-1)-class"
    }
}

fn render_failed(failed: &[Condition], self_intersection: i64, genus: i64) -> String {
    failed
        .iter()
        .map(|c| match c {
            Condition::A => format!("(a) C.C = {self_intersection}, must be -1"),
            Condition::B => format!("(b) genus = {genus}, must be 0"),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_verdict(v: &Verdict) -> String {
    let method = match v.method {
        exceptional_core::Method::Descent => "descent",
        exceptional_core::Method::Inductive => "inductive",
    };
    let mut out = format!("[{method}]\nverdict    {}\n", yes_no(v.is_minus_one));
    match &v.certificate {
        Certificate::ExceptionalTerminal { trace } => out.push_str(&render_trace(trace)),
        Certificate::ObstructingCurve { witness, product } => {
            let _ = writeln!(
                out,
                "witness    {witness}  ({})",
                witness.divisor_notation()
            );
            let _ = writeln!(out, "product    {product}");
            if v.method == exceptional_core::Method::Descent {
                if let Ok(trace) = descend(&v.class) {
                    out.push_str(&render_trace(&trace));
                }
            }
        }
        Certificate::ConditionFailure {
            failed,
            self_intersection,
            genus,
        } => {
            let _ = writeln!(
                out,
                "failed     {}",
                render_failed(failed, *self_intersection, *genus)
            );
        }
        Certificate::CriterionSatisfied {
            degrees_checked,
            shapes_checked,
            min_product,
        } => {
            if *shapes_checked == 0 {
                let _ = writeln!(
                    out,
                    "checked    no (-1)-classes of positive degree below {}",
                    degrees_checked + 1
                );
            } else {
                let _ = writeln!(
                    out,
                    "checked    {shapes_checked} shapes of degree 1..{degrees_checked}, min pairing {}",
                    min_product.unwrap_or(0)
                );
            }
        }
    }
    out
}

fn render_outcome(trace: &ReductionTrace) -> String {
    let steps = trace.steps.len();
    let plural = if steps == 1 { "" } else { "s" };
    match &trace.outcome {
        DescentOutcome::ReachedExceptional { index } => {
            format!("halt       reached E{index} after {steps} step{plural}\n")
        }
        DescentOutcome::NegativeMultiplicity { index, step } => format!(
            "halt       m{index} = {} < 0 at degree {} after {step} step{plural}\n",
            trace.terminal.mult(*index),
            trace.terminal.degree
        ),
        DescentOutcome::HypothesisFailure { reason } => format!("halt       stalled: {reason}\n"),
    }
}

fn render_trace(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    for (k, s) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "step {:<5} {}  {}  ->  {}",
            k + 1,
            s.triple,
            s.before,
            s.after
        );
    }
    out.push_str(&render_outcome(trace));
    out
}

#[derive(Serialize)]
struct ReduceDoc<'a> {
    schema: &'static str,
    command: &'static str,
    literal: String,
    class: &'a DivisorClass,
    trace: &'a ReductionTrace,
    witness: Option<DivisorClass>,
    witness_product: Option<i64>,
}

pub fn reduce(literal: &str, json: bool) -> Result<String, CliError> {
    let class = parse_class(literal)?;
    let trace = match descend(&class) {
        Ok(t) => t,
        Err(DescentError::Conditions {
            self_intersection,
            genus,
        }) => {
            let mut failed = Vec::new();
            if self_intersection != -1 {
                failed.push(Condition::A);
            }
            if genus != 0 {
                failed.push(Condition::B);
            }
            return Err(CliError::Input(format!(
                "cannot reduce {class}: {}",
                render_failed(&failed, self_intersection, genus)
            )));
        }
        Err(DescentError::Invariant(msg)) => return Err(CliError::Internal(msg)),
    };
    trace
        .replay()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let witness = trace.witness();
    let witness_product = witness
        .as_ref()
        .map(|w| exceptional_core::intersect(w, &class));
    if json {
        return to_json(&ReduceDoc {
            schema: SCHEMA_ID,
            command: "reduce",
            literal: class.to_string(),
            class: &class,
            trace: &trace,
            witness,
            witness_product,
        });
    }
    let mut out = format!("class      {class}\n");
    out.push_str(&render_trace(&trace));
    if let (Some(w), Some(p)) = (witness, witness_product) {
        let _ = writeln!(
            out,
            "witness    {w}  ({}), product {p}",
            w.divisor_notation()
        );
    }
    Ok(out)
}

#[derive(Serialize)]
struct ShapeDoc {
    class: DivisorClass,
    orbit_size: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<DivisorClass>>,
}

#[derive(Serialize)]
struct DegreeDoc {
    degree: i64,
    orbit_total: u128,
    shapes: Vec<ShapeDoc>,
}

#[derive(Serialize)]
struct EnumerateDoc {
    schema: &'static str,
    command: &'static str,
    n: usize,
    max_degree: i64,
    degrees: Vec<DegreeDoc>,
    total_shapes: usize,
    total_classes: u128,
}

pub fn enumerate(
    n: usize,
    max_degree: i64,
    expand: bool,
    json: bool,
    cache_opts: CacheOptions<'_>,
) -> Result<String, CliError> {
    if max_degree < 0 {
        return Err(CliError::Input(format!(
            "max degree {max_degree} is negative"
        )));
    }
    let table = obtain_table(n, max_degree, cache_opts, true)?;
    if json {
        let degrees = (0..=max_degree)
            .map(|d| DegreeDoc {
                degree: d,
                orbit_total: table.expanded_count_at(d),
                shapes: table
                    .bucket(d)
                    .map(|c| ShapeDoc {
                        class: c.clone(),
                        orbit_size: orbit_size(c),
                        members: expand.then(|| orbit(c).collect()),
                    })
                    .collect(),
            })
            .collect();
        return to_json(&EnumerateDoc {
            schema: SCHEMA_ID,
            command: "enumerate",
            n,
            max_degree,
            degrees,
            total_shapes: table.shape_count(),
            total_classes: table.expanded_count(),
        });
    }
    let mut out = format!("n = {n}, degrees 0..{max_degree}\n");
    for d in 0..=max_degree {
        let shapes: Vec<_> = table.bucket(d).collect();
        let plural = if shapes.len() == 1 { "" } else { "s" };
        let _ = writeln!(
            out,
            "degree {d:<3} {} shape{plural}, {} classes",
            shapes.len(),
            table.expanded_count_at(d)
        );
        for c in shapes {
            let _ = writeln!(out, "  {:<24} orbit {}", c.to_string(), orbit_size(c));
            if expand {
                // lexicographic order lists the orbit from its smallest vector;
                // reverse so it starts at the sorted representative
                let members: Vec<_> = orbit(c).collect();
                for m in members.iter().rev() {
                    let _ = writeln!(out, "    {}", m.divisor_notation());
                }
            }
        }
    }
    let _ = writeln!(
        out,
        "total      {} shapes, {} classes",
        table.shape_count(),
        table.expanded_count()
    );
    Ok(out)
}

#[derive(Serialize)]
struct InterpolateDoc<'a> {
    schema: &'static str,
    command: &'static str,
    literal: String,
    report: &'a ObstructionReport,
}

pub fn interpolate(
    literal: &str,
    degree_bound: Option<i64>,
    json: bool,
    cache_opts: CacheOptions<'_>,
) -> Result<String, CliError> {
    let class = parse_class(literal)?;
    let system = LinearSystem::new(class.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let bound = degree_bound.unwrap_or(class.degree);
    if bound < 0 {
        return Err(CliError::Input(format!("degree bound {bound} is negative")));
    }
    let table = obtain_table(class.len(), bound, cache_opts, false)?;
    let report = analyze_with_table(&system, degree_bound, &table).map_err(|e| match e {
        InterpolationError::Classify(c) => CliError::from(c),
        other => CliError::Input(other.to_string()),
    })?;
    if json {
        return to_json(&InterpolateDoc {
            schema: SCHEMA_ID,
            command: "interpolate",
            literal: class.to_string(),
            report: &report,
        });
    }
    let mut out = format!(
        "system     {class}\ndivisor    {}\nexpdim     {}\nsearched   (-1)-classes of degree <= {}\n",
        class.divisor_notation(),
        report.expdim,
        report.search_degree_bound
    );
    if report.conjecturally_special {
        let k = report.obstructions.len();
        let plural = if k == 1 { "" } else { "s" };
        let _ = writeln!(
            out,
            "verdict    SPECIAL (conjecturally): {k} obstruction{plural}"
        );
        for o in &report.obstructions {
            let _ = writeln!(
                out,
                "  {:<20} {:<28} product {}",
                o.class.to_string(),
                o.class.divisor_notation(),
                o.product
            );
        }
    } else {
        out.push_str("verdict    non-special (no (-1)-class meets the system in <= -2)\n");
    }
    Ok(out)
}
