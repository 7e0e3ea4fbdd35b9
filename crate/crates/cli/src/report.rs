//! Deterministic check reports: per-suite counts and replayable failure
//! witnesses, assembled in a fixed suite order regardless of worker count.
//! Wall-clock timing goes to stderr, never into the report bytes.

use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Stable identifier, unique within the suite.
    pub id: String,
    pub detail: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: usize,
    pub fail: usize,
    pub witnesses: Vec<Witness>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), pass: 0, fail: 0, witnesses: Vec::new() }
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, detail: &str, expected: &str, got: &str) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            self.witnesses.push(Witness {
                id: id.into(),
                detail: detail.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    /// Convenience for equality checks with debug-printable values.
    pub fn check_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        id: impl Into<String>,
        detail: &str,
        expected: &T,
        got: &T,
    ) {
        let ok = expected == got;
        self.check(id, ok, detail, &format!("{expected:?}"), &format!("{got:?}"));
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ScenarioConfig,
    pub suites: Vec<SuiteReport>,
    pub total_pass: usize,
    pub total_fail: usize,
}

impl Report {
    pub fn assemble(config: ScenarioConfig, suites: Vec<SuiteReport>) -> Self {
        let total_pass = suites.iter().map(|s| s.pass).sum();
        let total_fail = suites.iter().map(|s| s.fail).sum();
        Report { config, suites, total_pass, total_fail }
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary_lines(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<13} {:>8} pass {:>4} fail{}",
                s.suite,
                s.pass,
                s.fail,
                if s.fail == 0 { "" } else { "  <-- failing" }
            );
        }
        let _ = writeln!(out, "total: {} pass, {} fail", self.total_pass, self.total_fail);
        out
    }
}
