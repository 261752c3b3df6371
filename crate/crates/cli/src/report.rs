//! Structured results and their two renderings.

use std::fmt::Write;

use semiglue::check::Check;
use serde::Serialize;
use serde_json::Value;

use crate::problem::ProblemFile;

/// The outcome of one subcommand.
///
/// The JSON form has the stable top-level shape
/// `{subcommand, input, result, checks, timing_ms}`; `timing_ms` is omitted
/// with `--no-timing`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub input: Option<ProblemFile>,
    pub result: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub text: String,
    /// Human output lists only failing checks.
    #[serde(skip)]
    pub failures_only: bool,
}

impl Report {
    pub fn new(subcommand: &str, input: Option<ProblemFile>) -> Self {
        Report { subcommand: subcommand.into(), input, result: Value::Null, checks: Vec::new(), timing_ms: None, text: String::new(), failures_only: false }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = self.text.clone();
        let shown: Vec<&Check> = self.checks.iter().filter(|c| !(self.failures_only && c.passed)).collect();
        if !shown.is_empty() {
            out.push_str("checks:\n");
            for c in shown {
                let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "time: {t:.1} ms");
        }
        out
    }
}

pub fn tuple(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(", "))
}

pub fn vector<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}
