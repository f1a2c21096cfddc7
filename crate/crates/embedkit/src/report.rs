//! Run reports: a stable line-oriented text form for humans and golden
//! diffs, and a JSON form behind `--format machine`.
//!
//! The wall-time line always comes last so consumers can strip it.

use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MapStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CodeStats {
    pub n: usize,
    pub k: usize,
    /// Certified distance; `None` renders as `d=?`.
    pub d: Option<usize>,
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PredictedStats {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub job: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<MapStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<PredictedStats>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn new(job: impl Into<String>) -> Self {
        Self {
            job: job.into(),
            map: None,
            code: None,
            predicted: None,
            checks: Vec::new(),
            notes: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn push_check(&mut self, name: &'static str, status: CheckStatus) {
        self.checks.push(Check { name, status });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, CheckStatus::Fail))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "job: {}", self.job).unwrap();
        if let Some(m) = &self.map {
            writeln!(
                out,
                "map: vertices={} edges={} faces={} euler={} genus={}",
                m.vertices, m.edges, m.faces, m.euler, m.genus
            )
            .unwrap();
        }
        if let Some(c) = &self.code {
            let d = c.d.map_or_else(|| "?".to_string(), |d| d.to_string());
            writeln!(out, "code: n={} k={} d={d} cap={}", c.n, c.k, c.cap).unwrap();
        }
        if let Some(p) = &self.predicted {
            writeln!(out, "predicted: n={} k={} d={}", p.n, p.k, p.d).unwrap();
        }
        for check in &self.checks {
            writeln!(out, "check {}: {}", check.name, check.status.as_str()).unwrap();
        }
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        writeln!(out, "time_ms: {}", self.wall_ms).unwrap();
        out
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_is_line_oriented_with_time_last() {
        let mut report = RunReport::new("params class1:r=1");
        report.predicted = Some(PredictedStats { n: 10, k: 2, d: 3 });
        report.push_check("formula", CheckStatus::Pass);
        report.note("example note");
        report.wall_ms = 12;
        let text = report.render_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "job: params class1:r=1");
        assert_eq!(lines[1], "predicted: n=10 k=2 d=3");
        assert_eq!(lines[2], "check formula: pass");
        assert_eq!(lines[3], "note: example note");
        assert!(lines.last().unwrap().starts_with("time_ms:"));
    }

    #[test]
    fn machine_form_is_json() {
        let report = RunReport::new("x");
        let value: serde_json::Value = serde_json::from_str(&report.render_machine()).unwrap();
        assert_eq!(value["job"], "x");
    }

    #[test]
    fn failures_are_detected() {
        let mut report = RunReport::new("x");
        report.push_check("a", CheckStatus::Pass);
        report.push_check("b", CheckStatus::Skipped);
        assert!(report.all_checks_pass());
        report.push_check("c", CheckStatus::Fail);
        assert!(!report.all_checks_pass());
    }
}
