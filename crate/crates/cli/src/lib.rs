//! Scenario runner for the `connloc` command-line tool.
//!
//! A scenario names a computation kind, its parameters and the values it
//! should produce. Running one yields a [`Report`] that is printed as JSON on
//! standard output, with a readable summary on standard error.

pub mod dispatch;
pub mod report;
pub mod scenario;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use thiserror::Error;

pub use report::{compare, AggregateReport, Entry, Mismatch, Report};
pub use scenario::{Kind, Scenario};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed scenario at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("invalid scenario: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] connloc_core::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// Prefixes validation messages with where they occurred.
    pub fn context(self, at: &str) -> Self {
        match self {
            CliError::Invalid(m) => CliError::Invalid(format!("{at}: {m}")),
            CliError::Core(e) => CliError::Invalid(format!("{at}: {e}")),
            other => other,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "parse",
            CliError::Invalid(_) => "validation",
            CliError::Core(_) => "computation",
            CliError::Internal(_) => "internal",
        }
    }

    /// Machine-readable form printed on standard output when a run fails.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Json { line, column, .. } = self {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        if let CliError::Io { path, .. } = self {
            v["path"] = json!(path);
        }
        json!({ "error": v })
    }
}

pub mod exit {
    pub const PASS: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
}

pub fn run(s: &Scenario) -> Result<Report, CliError> {
    let outputs = dispatch::dispatch(s.kind, &s.params)?;
    let mismatches = match &s.expected {
        Some(e) => compare(e, &outputs),
        None => Vec::new(),
    };
    Ok(Report {
        name: s.name.clone(),
        kind: s.kind,
        reference: s.reference.clone(),
        notes: s.notes.clone(),
        pass: mismatches.is_empty(),
        outputs,
        expected: s.expected.clone(),
        mismatches,
    })
}

/// Loads and runs one file, returning the report and the wall time it took.
pub fn run_file(path: &Path) -> Result<(Report, Duration), CliError> {
    let start = Instant::now();
    let s = Scenario::load(path)?;
    let report = run(&s)?;
    Ok((report, start.elapsed()))
}

/// `*.json` files directly inside `dir`, sorted by file name.
pub fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

type Timed = Result<(Report, Duration), CliError>;

/// Runs every scenario in `dir`. A file that fails to load or run becomes an
/// error entry; the rest still run.
pub fn run_all(dir: &Path) -> Result<(AggregateReport, BTreeMap<String, Duration>), CliError> {
    let files = scenario_files(dir)?;
    let results: Vec<(String, Timed)> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| {
                let file = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                (file, scope.spawn(move || run_file(f)))
            })
            .collect();
        handles
            .into_iter()
            .map(|(file, h)| {
                let r = h.join().unwrap_or_else(|_| Err(CliError::Internal("scenario thread panicked".into())));
                (file, r)
            })
            .collect()
    });
    let mut timings = BTreeMap::new();
    let mut entries = Vec::new();
    for (file, r) in results {
        match r {
            Ok((report, t)) => {
                timings.insert(file.clone(), t);
                entries.push(Entry::Report { file, report });
            }
            Err(e) => entries.push(Entry::Error { file, error: e.to_json()["error"].clone() }),
        }
    }
    Ok((AggregateReport::new(entries), timings))
}

/// Readable summary: one line per checked value with its source sentence.
pub fn summary(report: &Report, elapsed: Option<Duration>) -> String {
    let status = if report.pass { "PASS" } else { "FAIL" };
    let time = elapsed.map(|t| format!(" in {:.3} s", t.as_secs_f64())).unwrap_or_default();
    let mut out = format!("{} [{}]: {status}{time}\n", report.name, report.kind.as_str());
    if let Some(r) = &report.reference {
        out.push_str(&format!("  reference: {r}\n"));
    }
    if let Some(expected) = &report.expected {
        for (path, want) in report::leaves(expected) {
            let got = report::lookup(&report.outputs, &path);
            let matched = got == Some(&want);
            let mark = if matched { "ok " } else { "BAD" };
            let got = got.map(Value::to_string).unwrap_or_else(|| "missing".into());
            out.push_str(&format!("  {mark} {} = {got}", path.join(".")));
            if !matched {
                out.push_str(&format!(" (expected {want})"));
            }
            if let Some(note) = report.note_for(&path) {
                out.push_str(&format!("  [{note}]"));
            }
            out.push('\n');
        }
    }
    out
}
