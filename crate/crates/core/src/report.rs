//! Report types shared by the audits and the property suite.

use serde::Serialize;
use serde_json::{Map, Value};

/// One failing case of a check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Failure {
    pub seed: u64,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_file: Option<String>,
}

/// Outcome of one named check over a number of cases.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub check_id: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(check_id: impl Into<String>) -> Self {
        CheckResult {
            check_id: check_id.into(),
            cases: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of an audit: per-check outcomes, a summary map with stable key
/// order, and a verdict. `asserted` is false when the verdict is reported
/// for information only.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AuditReport {
    pub audit: String,
    pub verdict: bool,
    pub asserted: bool,
    pub checks: Vec<CheckResult>,
    pub summary: Map<String, Value>,
}

impl AuditReport {
    pub fn new(audit: impl Into<String>) -> Self {
        AuditReport {
            audit: audit.into(),
            verdict: true,
            asserted: true,
            checks: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("summary values serialize");
        self.summary.insert(key.to_string(), v);
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.summary.get(key)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }
}
