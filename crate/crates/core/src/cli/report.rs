use std::fmt;

use sha2::{Digest, Sha256};

use crate::linalg::text::format_sig9;

/// How a command finished when it did not error out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A guaranteed invariant was violated.
    InvariantFailure,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::InvariantFailure => 2,
        }
    }
}

/// Output of a subcommand: prose for people, then a `key=value` block
/// for scripts.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs_digest: String,
    pub lines: Vec<String>,
    pub machine: Vec<(String, String)>,
    pub outcome: Outcome,
}

pub const MACHINE_MARKER: &str = "--- machine ---";

impl RunReport {
    pub fn new(command: &'static str, inputs: &InputDigest) -> Self {
        Self {
            command,
            inputs_digest: inputs.finish(),
            lines: Vec::new(),
            machine: Vec::new(),
            outcome: Outcome::Success,
        }
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.machine.push((key.into(), value.into()));
    }

    pub fn put_num(&mut self, key: impl Into<String>, value: f64) {
        self.put(key, format_sig9(value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn machine_block(&self) -> String {
        let mut out = format!(
            "command={}\ninputs_sha256={}\n",
            self.command, self.inputs_digest
        );
        for (k, v) in &self.machine {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        writeln!(f, "{MACHINE_MARKER}")?;
        f.write_str(&self.machine_block())
    }
}

/// Parses the `key=value` lines following [`MACHINE_MARKER`] in report text.
pub fn parse_machine_block(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip_while(|l| *l != MACHINE_MARKER)
        .skip(1)
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// SHA-256 over named inputs. Only contents and roles are hashed, not
/// paths, so the digest is stable across directories.
#[derive(Default, Clone)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, role: &str, bytes: &[u8]) -> &mut Self {
        self.hasher.update(role.as_bytes());
        self.hasher.update([0]);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
        self
    }

    pub fn finish(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }
}
