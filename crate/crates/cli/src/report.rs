use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Timings {
    pub total_ms: u128,
}

/// Machine-readable result of one command. Serialized keys are sorted, so two
/// runs with the same inputs produce identical text once timings are dropped.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<CheckResult>,
    pub anomalies: Vec<String>,
    pub notes: Vec<String>,
    pub outputs: Map<String, Value>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            anomalies: Vec::new(),
            notes: Vec::new(),
            outputs: Map::new(),
            version: env!("CARGO_PKG_VERSION").into(),
            timings: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.results.push(CheckResult {
            name: name.into(),
            pass,
            witness: witness.into(),
        });
    }

    pub fn anomaly(&mut self, msg: impl Into<String>) {
        self.anomalies.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.into(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.anomalies.is_empty() && self.results.iter().all(|r| r.pass)
    }

    /// 0 when everything passed, 2 on any failed check or anomaly.
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

    pub fn results_table(&self) -> Table {
        let mut t = Table::new(&["name", "pass", "witness"]);
        for r in &self.results {
            t.push(vec![r.name.clone(), r.pass.to_string(), r.witness.clone()]);
        }
        t
    }
}

/// Rows for CSV output.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }
}

/// A report plus optional tabular data for `--csv`.
pub struct Outcome {
    pub report: RunReport,
    pub table: Option<Table>,
}

impl From<RunReport> for Outcome {
    fn from(report: RunReport) -> Self {
        Self { report, table: None }
    }
}
