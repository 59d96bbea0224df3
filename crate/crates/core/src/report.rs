//! Verification reports and their text, JSON and CSV renderings.
//!
//! The JSON document has the keys `command`, `params`, `cells`,
//! `first_counterexample`, `verdict` and `timing`, in that order. Everything
//! except `timing` is a deterministic function of the parameters, so two runs
//! of the same command differ only inside `timing`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedCap,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedCap => "skipped-cap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One checked `(m, n)` instance. `lhs`/`rhs` are decimal strings; checks
/// that compare whole polynomials or ring elements leave them empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub m: usize,
    pub n: u64,
    pub check: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub m: usize,
    pub n: u64,
    pub check: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub m_range: (usize, usize),
    pub n_range: (u64, u64),
    pub methods: Vec<String>,
    pub variant: Option<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub enumeration_cap: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub params: Params,
    pub cells: Vec<Cell>,
    pub first_counterexample: Option<Counterexample>,
    pub verdict: Verdict,
    /// Wall-clock milliseconds per pipeline.
    #[serde(default)]
    pub timing: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, params: Params) -> Self {
        Self {
            command: command.into(),
            params,
            cells: Vec::new(),
            first_counterexample: None,
            verdict: Verdict::Pass,
            timing: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, cell: Cell) {
        self.cells.push(cell);
    }

    pub fn record_time(&mut self, pipeline: &str, elapsed: std::time::Duration) {
        let ms = (elapsed.as_secs_f64() * 1e6).round() / 1e3;
        *self.timing.entry(pipeline.to_string()).or_default() += ms;
    }

    /// Orders cells by `(m, n)` (stable within a cell) and derives the
    /// verdict and the minimal counterexample.
    pub fn finish(mut self) -> Self {
        self.cells.sort_by_key(|c| (c.m, c.n));
        self.first_counterexample = self
            .cells
            .iter()
            .find(|c| c.status == Status::Fail)
            .map(|c| Counterexample {
                m: c.m,
                n: c.n,
                check: c.check.clone(),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
            });
        self.verdict = if self.first_counterexample.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn count(&self, check: &str, status: Status) -> usize {
        self.cells
            .iter()
            .filter(|c| c.check == check && c.status == status)
            .count()
    }

    /// Distinct check names in first-seen order.
    pub fn checks(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for c in &self.cells {
            if !seen.contains(&c.check.as_str()) {
                seen.push(&c.check);
            }
        }
        seen
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The JSON document without `timing`.
    pub fn verdict_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report is always serializable");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timing");
        }
        serde_json::to_string_pretty(&value).expect("value is serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,n,check,lhs,rhs,status\n");
        for c in &self.cells {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                c.m,
                c.n,
                c.check,
                c.lhs.as_deref().unwrap_or(""),
                c.rhs.as_deref().unwrap_or(""),
                c.status.as_str()
            );
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let p = &self.params;
        let _ = writeln!(
            s,
            "grid:    m in {}..={}, n in {}..={}",
            p.m_range.0, p.m_range.1, p.n_range.0, p.n_range.1
        );
        let _ = writeln!(s, "methods: {}", p.methods.join(", "));
        if let Some(v) = &p.variant {
            let _ = writeln!(s, "variant: {v}");
        }
        let _ = writeln!(s, "cap:     {}", p.enumeration_cap);
        for (k, v) in &p.tolerances {
            let _ = writeln!(s, "tol:     {k} = {v:e}");
        }
        s.push('\n');

        let checks = self.checks();
        let width = checks.iter().map(|c| c.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(
            s,
            "{:<width$}  {:>7}  {:>7}  {:>11}",
            "check", "pass", "fail", "skipped-cap"
        );
        for check in &checks {
            let _ = writeln!(
                s,
                "{:<width$}  {:>7}  {:>7}  {:>11}",
                check,
                self.count(check, Status::Pass),
                self.count(check, Status::Fail),
                self.count(check, Status::SkippedCap)
            );
        }

        let failures: Vec<&Cell> = self.cells.iter().filter(|c| c.status == Status::Fail).collect();
        if !failures.is_empty() {
            s.push('\n');
            let _ = writeln!(s, "failures ({} total, first 20 shown):", failures.len());
            let _ = writeln!(
                s,
                "{:>3}  {:>5}  {:<width$}  {:>20}  {:>20}",
                "m", "n", "check", "lhs", "rhs"
            );
            for c in failures.iter().take(20) {
                let _ = writeln!(
                    s,
                    "{:>3}  {:>5}  {:<width$}  {:>20}  {:>20}",
                    c.m,
                    c.n,
                    c.check,
                    c.lhs.as_deref().unwrap_or("-"),
                    c.rhs.as_deref().unwrap_or("-")
                );
            }
        }
        s.push('\n');
        if let Some(ce) = &self.first_counterexample {
            let _ = writeln!(
                s,
                "first counterexample: m={}, n={}, check={}, lhs={}, rhs={}",
                ce.m,
                ce.n,
                ce.check,
                ce.lhs.as_deref().unwrap_or("-"),
                ce.rhs.as_deref().unwrap_or("-")
            );
        }
        let _ = writeln!(
            s,
            "verdict: {}",
            match self.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(m: usize, n: u64, check: &str, status: Status) -> Cell {
        Cell {
            m,
            n,
            check: check.into(),
            lhs: Some(n.to_string()),
            rhs: Some((n + u64::from(status == Status::Fail)).to_string()),
            status,
        }
    }

    fn params() -> Params {
        Params {
            m_range: (2, 4),
            n_range: (0, 3),
            methods: vec!["recurrence".into()],
            variant: None,
            tolerances: BTreeMap::new(),
            enumeration_cap: 1000,
        }
    }

    #[test]
    fn minimal_counterexample_in_m_then_n() {
        let mut r = VerificationReport::new("x", params());
        r.push(cell(4, 0, "a", Status::Fail));
        r.push(cell(3, 3, "a", Status::Fail));
        r.push(cell(3, 1, "a", Status::Pass));
        r.push(cell(2, 9, "a", Status::SkippedCap));
        let r = r.finish();
        assert_eq!(r.verdict, Verdict::Fail);
        let ce = r.first_counterexample.unwrap();
        assert_eq!((ce.m, ce.n), (3, 3));
        assert_eq!(
            r.cells.iter().map(|c| (c.m, c.n)).collect::<Vec<_>>(),
            vec![(2, 9), (3, 1), (3, 3), (4, 0)]
        );
    }

    #[test]
    fn skipped_cells_do_not_fail() {
        let mut r = VerificationReport::new("x", params());
        r.push(cell(2, 0, "a", Status::SkippedCap));
        let r = r.finish();
        assert!(r.passed());
        assert!(r.first_counterexample.is_none());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut r = VerificationReport::new("verify identity --m 3", params());
        r.push(cell(3, 0, "recurrence", Status::Pass));
        r.push(cell(3, 1, "reduce", Status::Fail));
        r.record_time("recurrence", std::time::Duration::from_micros(1234));
        let r = r.finish();
        let text = r.to_json();
        let back = VerificationReport::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(!r.verdict_json().contains("timing"));
        assert!(text.find("\"command\"").unwrap() < text.find("\"verdict\"").unwrap());
    }

    #[test]
    fn csv_rows() {
        let mut r = VerificationReport::new("x", params());
        r.push(cell(2, 1, "a", Status::Pass));
        let csv = r.finish().to_csv();
        assert_eq!(csv, "m,n,check,lhs,rhs,status\n2,1,a,1,1,pass\n");
    }
}
