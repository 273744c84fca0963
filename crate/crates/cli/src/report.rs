use std::collections::BTreeMap;

use coxwalls::CoxeterSystem;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct SystemDigest {
    pub rank: usize,
    /// SHA-256 of the canonical text serialization.
    pub sha256: String,
}

impl SystemDigest {
    pub fn of(system: &CoxeterSystem) -> Self {
        SystemDigest { rank: system.rank(), sha256: hex::encode(Sha256::digest(system.to_text().as_bytes())) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, detail: Value) -> Self {
        CheckResult { name: name.into(), pass, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub system: SystemDigest,
    pub parameters: BTreeMap<String, Value>,
    pub results: Vec<CheckResult>,
    pub seed: u64,
    pub pass: bool,
    /// Wall-clock milliseconds, present only when timing was requested so
    /// that reports stay reproducible by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn new(
        command: impl Into<String>,
        system: &CoxeterSystem,
        parameters: BTreeMap<String, Value>,
        results: Vec<CheckResult>,
        seed: u64,
    ) -> Self {
        let pass = !results.is_empty() && results.iter().all(|r| r.pass);
        RunReport {
            command: command.into(),
            system: SystemDigest::of(system),
            parameters,
            results,
            seed,
            pass,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
