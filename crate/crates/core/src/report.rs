//! Verification records and their aggregation into reports.
//!
//! Records are sorted by name and inputs before serialization, so a report
//! does not depend on the order in which parallel workers finished.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    /// Where the first violation occurred, for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub details: BTreeMap<String, String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            inputs: BTreeMap::new(),
            status: Status::Pass,
            witness: None,
            details: BTreeMap::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn detail(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_detail(&mut self, key: &str, value: impl fmt::Display) {
        self.details.insert(key.to_string(), value.to_string());
    }

    /// Marks the record failed at `locus`; only the first locus is kept.
    pub fn fail(&mut self, locus: impl Into<String>) {
        if self.status.is_pass() {
            self.status = Status::Fail;
            self.witness = Some(locus.into());
        }
    }

    /// Fails with `locus()` unless `ok`.
    pub fn require(&mut self, ok: bool, locus: impl FnOnce() -> String) {
        if !ok {
            self.fail(locus());
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    fn sort_key(&self) -> (String, Vec<(String, String)>) {
        (self.name.clone(), self.inputs.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub summary: Summary,
    pub per_check: Vec<CheckRecord>,
    /// Command-specific results such as computed values or dimension tables.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by_key(CheckRecord::sort_key);
        let passed = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Report {
            command: command.into(),
            status: Status::from_bool(summary.failed == 0),
            summary,
            per_check: checks,
            result: None,
        }
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = Some(result);
        self
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Exit code: 0 when everything passed, 2 on a verification failure.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per record: `name,status,inputs,witness`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "status", "inputs", "witness"]).expect("in-memory write");
        for c in &self.per_check {
            let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            w.write_record([
                c.name.as_str(),
                &c.status.to_string(),
                &inputs.join(";"),
                c.witness.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
