//! Command outcomes and their text and JSON renderings.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Verdict produced.
pub const EXIT_OK: i32 = 0;
/// Error.
pub const EXIT_ERROR: i32 = 1;
/// A semi-algorithm ran out of its bound.
pub const EXIT_BOUND: i32 = 2;

/// Content hash of one input.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    /// File path or `inline:<name>`.
    pub name: String,
    /// Hex SHA-256 of the content.
    pub sha256: String,
}

/// Hashes `content` under `name`.
pub fn digest(name: impl Into<String>, content: &[u8]) -> InputDigest {
    InputDigest {
        name: name.into(),
        sha256: format!("{:x}", Sha256::digest(content)),
    }
}

/// Reads a file and records its digest.
pub fn read_input(path: &Path, inputs: &mut Vec<InputDigest>) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    inputs.push(digest(path.display().to_string(), text.as_bytes()));
    Ok(text)
}

/// What a subcommand produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// Short verdict string.
    pub verdict: String,
    /// Human-readable output.
    pub text: String,
    /// Witness words.
    pub witnesses: Vec<String>,
    /// Command-specific structured data.
    pub details: Value,
    /// Process exit code.
    pub exit: i32,
}

impl Outcome {
    /// A successful outcome whose text is the verdict line.
    pub fn new(verdict: impl Into<String>) -> Self {
        let verdict = verdict.into();
        Outcome {
            text: verdict.clone() + "\n",
            verdict,
            witnesses: Vec::new(),
            details: Value::Null,
            exit: EXIT_OK,
        }
    }

    /// Replaces the text.
    pub fn text(mut self, text: impl Into<String>) -> Self {
        self.text = text.into();
        self
    }

    /// Sets the witnesses.
    pub fn witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }

    /// Sets the details.
    pub fn details(mut self, d: Value) -> Self {
        self.details = d;
        self
    }

    /// Sets the exit code.
    pub fn exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }
}

/// The JSON report.
#[derive(Debug, Serialize)]
pub struct Report<'a> {
    /// Subcommand name.
    pub operation: &'a str,
    /// Input digests in reading order.
    pub inputs: &'a [InputDigest],
    /// Verdict line.
    pub verdict: &'a str,
    /// Witness words.
    pub witnesses: &'a [String],
    /// Structured data.
    pub details: &'a Value,
    /// Exit code.
    pub exit_code: i32,
    /// Seed passed with `--seed`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wall time, present only with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}
