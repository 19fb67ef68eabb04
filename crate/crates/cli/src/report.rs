//! Verification reports and their JSON and text renderings.
//!
//! Residuals and tolerances are written in scientific notation with three
//! significant digits, as raw JSON numbers. Non-finite values become `null`.

use std::fmt::Write as _;
use std::time::Duration;

use pentagon_core::{Checks, Error};
use serde::Serialize;
use serde_json::value::RawValue;

/// One named residual held to a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    /// Error kind the failure corresponds to, if any.
    pub violation: Option<&'static str>,
}

impl Entry {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Checks run on one subject: a file, or a property spanning several files.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub subject: String,
    pub kind: Option<String>,
    pub checks: Vec<Entry>,
    /// Set when the subject could not be evaluated at all.
    pub error: Option<String>,
    pub wall_time: Duration,
}

impl Report {
    pub fn new(subject: impl Into<String>, kind: Option<&str>) -> Self {
        Self { subject: subject.into(), kind: kind.map(str::to_string), ..Self::default() }
    }

    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Entry::pass)
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64, violation: Option<&'static str>) {
        let name = name.into();
        let violation = violation.filter(|_| !(residual <= tolerance));
        self.checks.push(Entry { name, residual, tolerance, violation });
    }

    /// Copies library checks, tagging failures with `violation`.
    pub fn extend(&mut self, prefix: &str, checks: &Checks, violation: &'static str) {
        for c in checks.iter() {
            self.push(format!("{prefix}{}", c.name), c.residual, c.tolerance, Some(violation));
        }
    }

    /// Records a computed residual, or the violation that prevented computing it.
    /// Structural errors propagate.
    pub fn attempt(&mut self, name: &str, tolerance: f64, result: pentagon_core::Result<f64>) -> pentagon_core::Result<bool> {
        match result {
            Ok(r) => {
                self.push(name, r, tolerance, None);
                Ok(r <= tolerance)
            }
            Err(e) => {
                self.record_error(name, tolerance, &e)?;
                Ok(false)
            }
        }
    }

    /// Records a verification error as a failing entry. Structural errors propagate.
    pub fn record_error(&mut self, name: &str, tolerance: f64, e: &Error) -> pentagon_core::Result<()> {
        if e.is_structural() {
            return Err(e.clone());
        }
        self.push(name, e.residual().unwrap_or(f64::INFINITY), tolerance, Some(e.kind()));
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonReport::from(self)).expect("report serializes")
    }

    pub fn render_text(&self, only_failures: bool) -> String {
        let mut out = String::new();
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let kind = self.kind.as_deref().map(|k| format!("{k}, ")).unwrap_or_default();
        let _ = writeln!(out, "{status}  {} ({kind}{:.2} s)", self.subject, self.wall_time.as_secs_f64());
        if let Some(e) = &self.error {
            let _ = writeln!(out, "      error: {e}");
        }
        for c in self.checks.iter().filter(|c| !only_failures || !c.pass()) {
            let mark = if c.pass() { "" } else { "  FAILED" };
            let violation = c.violation.map(|v| format!(" {v}")).unwrap_or_default();
            let _ = writeln!(out, "      {:<32} {:>9} ≤ {:<9}{mark}{violation}", c.name, sci(c.residual), sci(c.tolerance));
        }
        out
    }
}

/// Reports for every subject of a suite run.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub subject: String,
    pub reports: Vec<Report>,
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(Report::pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.reports.iter().filter(|r| !r.pass()).map(|r| r.subject.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        let suite = JsonSuite {
            subject: &self.subject,
            subjects: self.reports.len(),
            failed: self.failed(),
            pass: self.pass(),
            reports: self.reports.iter().map(JsonReport::from).collect(),
            wall_time: self.wall_time.as_secs_f64(),
        };
        serde_json::to_string_pretty(&suite).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.render_text(true));
        }
        let failed = self.failed();
        let _ = writeln!(out, "{} subjects, {} failed, {:.2} s", self.reports.len(), failed.len(), self.wall_time.as_secs_f64());
        out
    }
}

/// `x` with three significant digits, e.g. `1.23e-15`.
pub fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

fn raw_number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { sci(x) } else { "null".to_string() };
    RawValue::from_string(text).expect("scientific notation is a JSON number")
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonEntry {
    name: String,
    residual: Box<RawValue>,
    tolerance: Box<RawValue>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<&'static str>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonReport {
    subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    pass: bool,
    checks: Vec<JsonEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    wall_time: f64,
}

impl From<&Report> for JsonReport {
    fn from(r: &Report) -> Self {
        Self {
            subject: r.subject.clone(),
            kind: r.kind.clone(),
            pass: r.pass(),
            checks: r
                .checks
                .iter()
                .map(|c| JsonEntry {
                    name: c.name.clone(),
                    residual: raw_number(c.residual),
                    tolerance: raw_number(c.tolerance),
                    pass: c.pass(),
                    violation: c.violation,
                })
                .collect(),
            error: r.error.clone(),
            wall_time: r.wall_time.as_secs_f64(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonSuite<'a> {
    subject: &'a str,
    subjects: usize,
    failed: Vec<&'a str>,
    pass: bool,
    reports: Vec<JsonReport>,
    wall_time: f64,
}
