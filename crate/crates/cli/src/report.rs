use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::scenario::Kind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub path: String,
    pub expected: Value,
    /// `None` when the output has no value at `path`.
    pub actual: Option<Value>,
}

/// Outcome of one scenario. Wall time is reported separately so that the JSON
/// of two runs is byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub kind: Kind,
    pub reference: Option<String>,
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
    pub outputs: Value,
    pub expected: Option<Value>,
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    /// Note attached to the longest prefix of `path`, else the reference.
    pub fn note_for(&self, path: &[String]) -> Option<&str> {
        (1..=path.len())
            .rev()
            .find_map(|n| self.notes.get(&path[..n].join(".")))
            .or(self.reference.as_ref())
            .map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Entry {
    Report { file: String, report: Report },
    Error { file: String, error: Value },
}

impl Entry {
    pub fn passed(&self) -> bool {
        matches!(self, Entry::Report { report, .. } if report.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub pass: bool,
    pub entries: Vec<Entry>,
}

impl AggregateReport {
    pub fn new(entries: Vec<Entry>) -> Self {
        let passed = entries.iter().filter(|e| e.passed()).count();
        let errors = entries.iter().filter(|e| matches!(e, Entry::Error { .. })).count();
        let total = entries.len();
        AggregateReport { total, passed, failed: total - passed - errors, errors, pass: passed == total, entries }
    }
}

/// Every leaf of `v` with its key path. Arrays and scalars are leaves.
pub fn leaves(v: &Value) -> Vec<(Vec<String>, Value)> {
    fn walk(v: &Value, path: &mut Vec<String>, out: &mut Vec<(Vec<String>, Value)>) {
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    path.push(k.clone());
                    walk(x, path, out);
                    path.pop();
                }
            }
            _ => out.push((path.clone(), v.clone())),
        }
    }
    let mut out = Vec::new();
    walk(v, &mut Vec::new(), &mut out);
    out
}

pub fn lookup<'a>(v: &'a Value, path: &[String]) -> Option<&'a Value> {
    path.iter().try_fold(v, |cur, k| cur.get(k))
}

/// Leaves of `expected` that the outputs do not reproduce exactly.
pub fn compare(expected: &Value, outputs: &Value) -> Vec<Mismatch> {
    leaves(expected)
        .into_iter()
        .filter_map(|(path, want)| {
            let got = lookup(outputs, &path);
            (got != Some(&want)).then(|| Mismatch { path: path.join("."), expected: want, actual: got.cloned() })
        })
        .collect()
}
