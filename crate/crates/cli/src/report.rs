//! Run reports and input digests.

use std::fs;
use std::path::Path;
use std::time::Instant;

use hypercert::io::SCHEMA_VERSION;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Hashes every input that can change a verdict: parameter values and file
/// contents. Paths are not hashed, so moving a file keeps its digest.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(command: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        Inputs { hasher }
    }

    pub fn param(&mut self, name: &str, value: &str) {
        self.field(name.as_bytes());
        self.field(value.as_bytes());
    }

    pub fn read(&mut self, path: &Path) -> Result<String, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.field(b"file");
        self.field(text.as_bytes());
        Ok(text)
    }

    // Length-prefixed so that field boundaries are unambiguous.
    fn field(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    Argument,
    Environment,
    Generated,
}

#[derive(Debug, Serialize)]
pub struct Seed {
    pub value: u64,
    pub source: SeedSource,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Everything but `timings` is a function of (command, inputs, seed).
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub version: u32,
    pub command: String,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<Seed>,
    pub verdict: String,
    pub exit_code: u8,
    pub witnesses: Value,
    pub artifacts: Vec<String>,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(command: &str, inputs: Inputs, seed: Option<Seed>, verdict: &str, exit_code: u8) -> Self {
        RunReport {
            version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs_digest: inputs.digest(),
            seed,
            verdict: verdict.to_string(),
            exit_code,
            witnesses: Value::Null,
            artifacts: Vec::new(),
            timings: Timings { total_ms: 0.0 },
        }
    }

    pub fn finish(mut self, start: Instant) -> Self {
        self.timings.total_ms = start.elapsed().as_secs_f64() * 1000.0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}
