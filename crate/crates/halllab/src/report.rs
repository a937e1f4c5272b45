//! Experiment reports written by `--json`.

use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = include_str!("../schema/experiment_report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

/// Wall-clock data; the only part of a report that differs between runs
/// with the same command and seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timestamp {
    pub unix_seconds: u64,
    pub wall_clock_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub tool: String,
    pub version: String,
    /// Arguments after the program name, without `--json PATH`.
    pub command: Vec<String>,
    pub seeds: Vec<u64>,
    pub parameters: BTreeMap<String, Value>,
    pub trials: Vec<Value>,
    pub aggregate: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
    pub timestamp: Timestamp,
}

impl ExperimentReport {
    pub fn new(command: Vec<String>) -> Self {
        ExperimentReport {
            tool: "halllab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            seeds: Vec::new(),
            parameters: BTreeMap::new(),
            trials: Vec::new(),
            aggregate: BTreeMap::new(),
            verdicts: Vec::new(),
            warnings: Vec::new(),
            timestamp: Timestamp { unix_seconds: 0, wall_clock_seconds: 0.0 },
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.into(), value.into());
    }

    pub fn agg(&mut self, key: &str, value: impl Into<Value>) {
        self.aggregate.insert(key.into(), value.into());
    }

    pub fn verdict(&mut self, name: &str, expected: impl ToString, observed: impl ToString, passed: bool) {
        self.verdicts.push(Verdict {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            passed,
        });
    }

    pub fn stamp(&mut self, started: Instant) {
        let unix_seconds = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        self.timestamp = Timestamp { unix_seconds, wall_clock_seconds: started.elapsed().as_secs_f64() };
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
