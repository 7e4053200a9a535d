//! Deterministic JSON reports: exact rationals as strings, struct fields in
//! declaration order, map keys sorted. Byte-identical output for identical
//! inputs and seed.

use serde::Serialize;
use serde_json::{Map, Value};
use sgv_core::check::{Check, CheckList, Verdict};

#[derive(Serialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub config: ConfigEcho,
    pub results: Value,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub samples: usize,
    pub max_steps: usize,
    pub inputs: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config: ConfigEcho) -> Self {
        Report {
            schema_version: sgv_core::SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            config,
            results: Value::Object(Map::new()),
            checks: Vec::new(),
        }
    }

    pub fn set_result(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), value);
        }
    }

    pub fn extend_checks(&mut self, list: CheckList) {
        self.checks.extend(list.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn usize_list(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&n| Value::from(n)).collect())
}

pub fn scalar_strings(v: &[sgv_core::Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::from(s.to_string())).collect())
}
