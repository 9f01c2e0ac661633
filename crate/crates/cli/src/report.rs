use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// One pass/fail verdict with its first witness on failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, outcome: Result<(), String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: outcome.is_ok(),
            witness: outcome.err(),
            counts: BTreeMap::new(),
        }
    }

    pub fn count(mut self, key: &str, value: u64) -> Self {
        self.counts.insert(key.to_string(), value);
        self
    }
}

/// Checks in the order they were run, plus informational facts keyed by
/// name. Timing is deliberately absent so that reports are reproducible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub facts: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            seed,
            passed: true,
            checks: Vec::new(),
            facts: Map::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        self.push(CheckResult::new(name, outcome));
    }

    pub fn push(&mut self, check: CheckResult) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn fact(&mut self, key: &str, value: impl Into<Value>) {
        self.facts.insert(key.to_string(), value.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialise");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (seed {})", self.command, self.seed).unwrap();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            write!(out, "{mark} {}", c.name).unwrap();
            if !c.counts.is_empty() {
                let counts: Vec<String> =
                    c.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(out, " [{}]", counts.join(", ")).unwrap();
            }
            if let Some(w) = &c.witness {
                write!(out, ": {w}").unwrap();
            }
            out.push('\n');
        }
        for (k, v) in &self.facts {
            writeln!(out, "{k}: {v}").unwrap();
        }
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(out, "verdict: {verdict}").unwrap();
        out
    }
}
