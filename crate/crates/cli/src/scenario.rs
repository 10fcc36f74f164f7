//! Scenario files: one JSON record naming a computation, its inputs and the
//! values it is expected to produce.

use std::collections::BTreeMap;
use std::path::Path;

use connloc_core::exact::{parse_rational, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Stability,
    Diffop,
    Cohomology,
    Kuranishi,
    Git,
    Deform,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Stability => "stability",
            Kind::Diffop => "diffop",
            Kind::Cohomology => "cohomology",
            Kind::Kuranishi => "kuranishi",
            Kind::Git => "git",
            Kind::Deform => "deform",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub name: String,
    pub kind: Kind,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub expected: Option<Value>,
    /// Statement being checked, echoed into the report.
    #[serde(default)]
    pub reference: Option<String>,
    /// Source sentences for individual expected values, keyed by dotted path.
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if s.version != FORMAT_VERSION {
            return Err(CliError::Invalid(format!(
                "scenario version {} is not supported (expected {FORMAT_VERSION})",
                s.version
            )));
        }
        if !s.params.is_object() && !s.params.is_null() {
            return Err(CliError::Invalid("params must be an object".into()));
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text)
    }
}

/// A rational given either as a JSON integer or as a `"p/q"` string.
pub fn rational(v: &Value, what: &str) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Invalid(format!("{what}: {e}"))),
        _ => Err(CliError::Invalid(format!("{what}: expected an integer or a \"p/q\" string, got {v}"))),
    }
}

pub fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| CliError::Invalid(format!("missing field `{key}`")))
}

pub fn uint(obj: &Value, key: &str) -> Result<u64, CliError> {
    field(obj, key)?
        .as_u64()
        .ok_or_else(|| CliError::Invalid(format!("`{key}` must be a nonnegative integer")))
}

pub fn int(obj: &Value, key: &str) -> Result<i64, CliError> {
    field(obj, key)?.as_i64().ok_or_else(|| CliError::Invalid(format!("`{key}` must be an integer")))
}

pub fn boolean(obj: &Value, key: &str) -> Result<bool, CliError> {
    field(obj, key)?.as_bool().ok_or_else(|| CliError::Invalid(format!("`{key}` must be true or false")))
}

pub fn array<'a>(obj: &'a Value, key: &str) -> Result<&'a Vec<Value>, CliError> {
    field(obj, key)?.as_array().ok_or_else(|| CliError::Invalid(format!("`{key}` must be an array")))
}

/// Fixed-length list of rationals.
pub fn rationals<const N: usize>(v: &Value, what: &str) -> Result<[Rational; N], CliError> {
    let items = v.as_array().ok_or_else(|| CliError::Invalid(format!("{what}: expected a list")))?;
    if items.len() != N {
        return Err(CliError::Invalid(format!("{what}: expected {N} entries, got {}", items.len())));
    }
    let parsed: Vec<Rational> = items.iter().map(|x| rational(x, what)).collect::<Result<_, _>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

/// A rational from a command-line argument.
pub fn rational_arg(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(|e| CliError::Invalid(format!("{what}: {e}")))
}

/// Comma-separated rationals from a command-line argument.
pub fn rationals_arg<const N: usize>(s: &str, what: &str) -> Result<[Rational; N], CliError> {
    let parsed: Vec<Rational> = s.split(',').map(|x| rational_arg(x, what)).collect::<Result<_, _>>()?;
    let n = parsed.len();
    parsed
        .try_into()
        .map_err(|_| CliError::Invalid(format!("{what}: expected {N} comma-separated values, got {n}")))
}
