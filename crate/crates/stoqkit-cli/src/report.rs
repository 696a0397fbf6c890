//! Machine-readable command reports: stable field names, input content
//! hashes for reproducibility, timing, and the tool version.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::time::Duration;

#[derive(Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub verdict: String,
    pub result: serde_json::Value,
    pub timing_ms: u128,
    pub version: String,
}

impl CommandReport {
    pub fn new(
        command: String,
        inputs: &[(PathBuf, String)],
        verdict: String,
        result: serde_json::Value,
        elapsed: Duration,
    ) -> Self {
        CommandReport {
            command,
            inputs: inputs
                .iter()
                .map(|(p, hash)| InputRecord {
                    path: p.display().to_string(),
                    sha256: hash.clone(),
                })
                .collect(),
            verdict,
            result,
            timing_ms: elapsed.as_millis(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
