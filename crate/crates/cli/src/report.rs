//! Machine-readable reports. Exact values are strings (`"p/q"`, `"a+b*i"`);
//! maps are ordered so that output is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crinv::series::TruncatedSeries;
use crinv::GaussianRational;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a key changes meaning. Recorded in the schema file.
pub const SCHEMA_VERSION: u32 = 1;

/// Series are echoed through this degree.
pub const ECHO_ORDER: usize = 8;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InputEcho {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeff_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactZero,
    Nonzero,
    WithinTolerance,
    ExceedsTolerance,
}

impl Status {
    pub fn is_violation(self) -> bool {
        matches!(self, Status::Nonzero | Status::ExceedsTolerance)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Residual {
    pub name: String,
    pub status: Status,
    /// `"0"` for exact zeros, the series or number otherwise.
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Residual {
    pub fn exact(name: &str, r: &TruncatedSeries) -> Self {
        let status = if r.is_zero() { Status::ExactZero } else { Status::Nonzero };
        Self { name: name.into(), status, value: r.to_string(), tolerance: None }
    }

    /// Exact residual of any printable kind (e.g. a polynomial).
    pub fn symbolic(name: &str, zero: bool, v: &impl std::fmt::Display) -> Self {
        let status = if zero { Status::ExactZero } else { Status::Nonzero };
        Self { name: name.into(), status, value: v.to_string(), tolerance: None }
    }

    pub fn exact_value(name: &str, v: &GaussianRational) -> Self {
        let status = if v == &GaussianRational::from_int(0) { Status::ExactZero } else { Status::Nonzero };
        Self { name: name.into(), status, value: v.to_string(), tolerance: None }
    }

    /// `value < tolerance`.
    pub fn numeric(name: &str, value: f64, tolerance: f64) -> Self {
        let status = if value < tolerance { Status::WithinTolerance } else { Status::ExceedsTolerance };
        Self { name: name.into(), status, value: format!("{value:e}"), tolerance: Some(tolerance) }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CalibrationSection {
    pub c: String,
    pub probe_family: String,
    pub probes: Vec<String>,
    pub samples: Vec<String>,
    /// Constant term first.
    pub polynomial: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub input: InputEcho,
    pub series: BTreeMap<String, String>,
    pub values: BTreeMap<String, Value>,
    pub residuals: Vec<Residual>,
    pub verdicts: BTreeMap<String, Value>,
    pub calibration: Option<CalibrationSection>,
    pub version: String,
}

impl Report {
    pub fn new(input: InputEcho) -> Self {
        Self {
            input,
            series: BTreeMap::new(),
            values: BTreeMap::new(),
            residuals: Vec::new(),
            verdicts: BTreeMap::new(),
            calibration: None,
            version: format!("{} (schema {SCHEMA_VERSION})", env!("CARGO_PKG_VERSION")),
        }
    }

    pub fn echo_series(&mut self, name: &str, s: &TruncatedSeries) {
        self.series.insert(name.into(), s.truncate(s.order().min(ECHO_ORDER)).to_string());
    }

    pub fn exact(&mut self, name: &str, v: &GaussianRational) {
        self.values.insert(name.into(), Value::String(v.to_string()));
    }

    pub fn float(&mut self, name: &str, v: f64) {
        self.values.insert(name.into(), serde_json::json!(v));
    }

    pub fn verdict(&mut self, name: &str, v: impl Into<Value>) {
        self.verdicts.insert(name.into(), v.into());
    }

    /// Records a failed check that is not a residual (e.g. a verdict
    /// mismatch) under `verdicts.violations`.
    pub fn flag_violation(&mut self, what: &str) {
        let list = self.verdicts.entry("violations".into()).or_insert_with(|| Value::Array(Vec::new()));
        if let Value::Array(v) = list {
            v.push(Value::String(what.into()));
        }
    }

    pub fn has_violation(&self) -> bool {
        self.residuals.iter().any(|r| r.status.is_violation())
            || self.verdicts.get("violations").is_some_and(|v| v.as_array().is_some_and(|a| !a.is_empty()))
    }

    /// 0, or 2 when any identity is violated.
    pub fn exit_code(&self) -> u8 {
        if self.has_violation() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "crinv {}", self.input.subcommand);
        for (k, v) in [
            ("kind", &self.input.kind),
            ("expr", &self.input.expr),
            ("coeff-file", &self.input.coeff_file),
            ("lambda", &self.input.lambda),
        ] {
            if let Some(v) = v {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        if let Some(n) = self.input.order {
            let _ = writeln!(out, "  order: {n}");
        }
        if !self.series.is_empty() {
            let _ = writeln!(out, "series (through degree {ECHO_ORDER}):");
            for (k, v) in &self.series {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        if !self.values.is_empty() {
            let _ = writeln!(out, "values:");
            for (k, v) in &self.values {
                let _ = writeln!(out, "  {k} = {}", plain(v));
            }
        }
        if !self.residuals.is_empty() {
            let _ = writeln!(out, "residuals:");
            let width = self.residuals.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &self.residuals {
                let status = serde_json::to_value(r.status).map(|v| plain(&v)).unwrap_or_default();
                let _ = write!(out, "  {:width$}  {status}", r.name);
                if r.status != Status::ExactZero {
                    let _ = write!(out, "  {}", r.value);
                }
                out.push('\n');
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "verdicts:");
            for (k, v) in &self.verdicts {
                let _ = writeln!(out, "  {k}: {}", plain(v));
            }
        }
        if let Some(c) = &self.calibration {
            let _ = writeln!(out, "calibration ({}):", c.probe_family);
            let _ = writeln!(out, "  c = {}", c.c);
            let _ = writeln!(out, "  probes = {}", c.probes.join(", "));
            let _ = writeln!(out, "  samples = {}", c.samples.join(", "));
            let _ = writeln!(out, "  polynomial (constant first) = {}", c.polynomial.join(", "));
        }
        let _ = writeln!(out, "version: {}", self.version);
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new(InputEcho {
            subcommand: "x".into(),
            kind: None,
            expr: None,
            coeff_file: None,
            order: None,
            lambda: None,
        });
        r.residuals.push(Residual::exact("zero", &TruncatedSeries::zero(3)));
        r.residuals.push(Residual::numeric("small", 1e-9, 1e-6));
        assert_eq!(r.exit_code(), 0);
        r.residuals.push(Residual::exact("one", &TruncatedSeries::one(3)));
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn top_level_keys_in_order() {
        let r = Report::new(InputEcho {
            subcommand: "x".into(),
            kind: None,
            expr: None,
            coeff_file: None,
            order: Some(4),
            lambda: None,
        });
        let json = r.to_json();
        let keys = ["\"input\"", "\"series\"", "\"values\"", "\"residuals\"", "\"verdicts\"", "\"calibration\"", "\"version\""];
        let pos: Vec<_> = keys.iter().map(|k| json.find(k).expect(k)).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
    }
}
