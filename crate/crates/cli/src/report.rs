use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        }
    }
}

/// One verdict or finding in a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status, detail: detail.into(), data: serde_json::Value::Null }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = data;
        self
    }
}

/// Everything a command reports, in both human and JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub results: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport { command, results: Vec::new(), outputs: Vec::new(), error: None, exit_status: 0 }
    }

    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "z2alg {}", self.command.join(" ")).unwrap();
        for r in &self.results {
            writeln!(s, "[{}] {}: {}", r.status.tag(), r.name, r.detail).unwrap();
        }
        for o in &self.outputs {
            writeln!(s, "wrote {o}").unwrap();
        }
        if let Some(e) = &self.error {
            writeln!(s, "error: {e}").unwrap();
        }
        writeln!(s, "exit {}", self.exit_status).unwrap();
        s
    }
}
