//! JSON emission helpers. Every document carries `"schema": 1`; floats
//! are rounded to 12 significant digits before serialization so that a
//! given configuration always produces byte-identical output.

use petalab_core::exactalg::text::format_rational;
use petalab_core::rootlab::{RootClass, RootSet};
use petalab_core::theorems::BoundReport;
use serde_json::{json, Value};

/// Round to 12 significant digits; the shortest-representation printer
/// then emits a fixed string for the fixed bits.
pub fn fixed(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.12e}").parse().unwrap_or(x)
}

pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(fixed(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Wrap a report in the versioned envelope.
pub fn envelope(command: &str, report: Value) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "report": report,
    })
}

pub fn error_object(kind: &str, message: &str) -> Value {
    json!({
        "schema": 1,
        "error": { "kind": kind, "message": message },
    })
}

pub fn root_set(set: &RootSet) -> Value {
    let entries: Vec<Value> = set
        .entries
        .iter()
        .map(|e| {
            let (re, im) = e.value.to_f64_pair();
            let class = match &e.class {
                RootClass::Real => json!("real"),
                RootClass::ConjugatePair { partner } => json!({ "conjugate_pair": partner }),
            };
            json!({
                "re": float(re),
                "im": float(im),
                "multiplicity": e.multiplicity,
                "class": class,
            })
        })
        .collect();
    json!({
        "source_degree": set.source_degree,
        "n_real_distinct": set.real_distinct(),
        "n_nonreal_distinct": set.nonreal_distinct(),
        "entries": entries,
    })
}

pub fn bound_report(r: &BoundReport) -> Value {
    json!({
        "theorem": serde_json::to_value(r.theorem_id).unwrap(),
        "d": r.d,
        "degree_params": { "m_or_n": r.m_or_n, "c": format_rational(&r.c) },
        "required": {
            "nonreal_min": r.required_nonreal_min,
            "real_max": r.required_real_max,
        },
        "observed": {
            "nonreal": r.observed_nonreal,
            "real": r.observed_real,
        },
        "pass": r.pass,
        "roots": root_set(&r.roots),
    })
}

/// Deterministic pretty printing (serde_json sorts object keys).
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Flatten a JSON value into CSV (header + one line per array element)
/// for the simple tabular reports.
pub fn csv_of_entries(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Ppm,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            "ppm" => Some(OutputFormat::Ppm),
            _ => None,
        }
    }
}
