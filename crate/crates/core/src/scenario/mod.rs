//! Scenarios: JSON-described pipelines and the built-in worked examples.
//!
//! A scenario names a pipeline kind and carries its inputs as a payload. The
//! run produces a [`Report`] with a ledger of named checks and the computed
//! values. With expectations the status is `pass` or `fail`; without, it is
//! `pass` when every check holds and `flagged` otherwise.

mod builtin;
mod kinds;

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use builtin::{builtin, BUILTINS};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Reduce,
    Spinor,
    GcsCheck,
    Tduality,
    PolyformCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub kind: Kind,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectations: Option<Expectations>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default)]
    pub checks: BTreeMap<String, bool>,
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub id: String,
    pub kind: Kind,
    pub status: Status,
    pub checks: BTreeMap<String, bool>,
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Check ledger and computed values of one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub checks: BTreeMap<String, bool>,
    pub values: BTreeMap<String, Value>,
}

impl Outcome {
    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    pub fn value(&mut self, name: &str, v: impl Into<Value>) {
        self.values.insert(name.to_string(), v.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|b| *b)
    }
}

impl Report {
    pub fn new(id: &str, kind: Kind, outcome: Outcome, expectations: Option<&Expectations>) -> Self {
        let mut mismatches = Vec::new();
        let status = match expectations {
            Some(exp) => {
                for (name, want) in &exp.checks {
                    match outcome.checks.get(name) {
                        Some(got) if got == want => {}
                        Some(got) => mismatches.push(format!("check {name}: expected {want}, got {got}")),
                        None => mismatches.push(format!("check {name}: not computed")),
                    }
                }
                for (name, want) in &exp.values {
                    match outcome.values.get(name) {
                        Some(got) if got == want => {}
                        Some(got) => mismatches.push(format!("value {name}: expected {want}, got {got}")),
                        None => mismatches.push(format!("value {name}: not computed")),
                    }
                }
                if mismatches.is_empty() {
                    Status::Pass
                } else {
                    Status::Fail
                }
            }
            None if outcome.all_pass() => Status::Pass,
            None => Status::Flagged,
        };
        Report {
            schema_version: SCHEMA_VERSION,
            id: id.to_string(),
            kind,
            status,
            checks: outcome.checks,
            values: outcome.values,
            mismatches,
            timing_ms: None,
        }
    }
}

/// Deserializes a payload, reporting the JSON path of the first problem.
pub(crate) fn payload<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { format!(".{path}") };
        Error::Parse(format!("payload{path}: {}", e.into_inner()))
    })
}

/// Parses one scenario or an array of them.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let list = match v {
        Value::Array(items) => items,
        other => vec![other],
    };
    list.into_iter()
        .enumerate()
        .map(|(i, item)| {
            serde_path_to_error::deserialize(item).map_err(|e| {
                let path = e.path().to_string();
                Error::Parse(format!("scenario {i}, at {path}: {}", e.into_inner()))
            })
        })
        .collect()
}

pub fn run(s: &Scenario) -> Result<Report> {
    let outcome = match s.kind {
        Kind::Reduce => kinds::reduce(&s.payload)?,
        Kind::Spinor => kinds::spinor(&s.payload)?,
        Kind::GcsCheck => kinds::gcs_check(&s.payload)?,
        Kind::Tduality => kinds::tduality(&s.payload)?,
        Kind::PolyformCheck => kinds::polyform_check(&s.payload)?,
    };
    Ok(Report::new(&s.id, s.kind, outcome, s.expectations.as_ref()))
}
