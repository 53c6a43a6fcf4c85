//! Machine-readable run reports shared by all CLI commands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::wcert::CertificateDoc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssertionResult {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub statement: String,
    pub expected: bool,
    pub actual: bool,
    pub pass: bool,
}

impl AssertionResult {
    pub fn new(name: impl Into<String>, statement: impl Into<String>, expected: bool, actual: bool) -> Self {
        AssertionResult {
            name: name.into(),
            statement: statement.into(),
            expected,
            actual,
            pass: expected == actual,
        }
    }

    /// An assertion expected to hold.
    pub fn holds(name: impl Into<String>, statement: impl Into<String>, actual: bool) -> Self {
        Self::new(name, statement, true, actual)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Arguments the command was invoked with, program name excluded.
    pub command: Vec<String>,
    pub assertions: Vec<AssertionResult>,
    /// Wall-clock milliseconds per phase; only filled on request so that
    /// default output is reproducible byte for byte.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
    /// `pass` iff every assertion passes.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, CertificateDoc>,
    /// Command-specific payload.
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub result: Value,
}

pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";

impl RunReport {
    pub fn new(command: Vec<String>) -> RunReport {
        RunReport {
            command,
            assertions: Vec::new(),
            timings: BTreeMap::new(),
            verdict: PASS.into(),
            certificates: BTreeMap::new(),
            result: Value::Null,
        }
    }

    pub fn push(&mut self, a: AssertionResult) {
        self.assertions.push(a);
        self.settle();
    }

    /// Recomputes the verdict from the assertions.
    pub fn settle(&mut self) {
        self.verdict = if self.pass() { PASS } else { FAIL }.into();
    }

    pub fn pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    /// Whether `verdict` and every `pass` flag agree with the recorded values.
    pub fn is_consistent(&self) -> bool {
        self.assertions.iter().all(|a| a.pass == (a.expected == a.actual))
            && self.verdict == if self.pass() { PASS } else { FAIL }
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}
