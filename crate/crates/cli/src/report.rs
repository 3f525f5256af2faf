use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One verdict. Informational findings (a poset that is not ccd, say) are
/// checks that pass with the finding in `detail`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            data: Value::Null,
        }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, true, detail)
    }

    pub fn with_data(mut self, data: impl Serialize) -> Self {
        self.data = serde_json::to_value(data).expect("report data serializes");
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 over the inputs in the order they were read.
    pub input_sha256: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, Default)]
pub struct Fingerprint(Sha256);

impl Fingerprint {
    pub fn add(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

impl Report {
    pub fn new(command: &str, fingerprint: Fingerprint, seed: u64, checks: Vec<Check>, elapsed_ms: u128) -> Self {
        Report {
            tool: "tdcat".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_sha256: fingerprint.finish(),
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
            elapsed_ms,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.command);
        let _ = writeln!(out, "input sha256 {}", self.input_sha256);
        let _ = writeln!(out, "seed {}", self.seed);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed, {} ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed,
            self.elapsed_ms
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut fp = Fingerprint::default();
        fp.add(b"element a\n");
        Report::new(
            "analyze-poset",
            fp,
            7,
            vec![Check::info("ccd", "ccd = true"), Check::new("duality", false, "points differ").with_data(vec![1, 2])],
            3,
        )
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_and_json_agree_on_verdicts() {
        let r = sample();
        let text = r.to_text();
        assert!(text.contains("[pass] ccd"));
        assert!(text.contains("[FAIL] duality"));
        assert!(text.lines().last().unwrap().starts_with("FAIL"));
        assert!(!r.passed);
    }

    #[test]
    fn fingerprint_separates_inputs() {
        let mut a = Fingerprint::default();
        a.add(b"ab");
        a.add(b"c");
        let mut b = Fingerprint::default();
        b.add(b"a");
        b.add(b"bc");
        assert_ne!(a.finish(), b.finish());
    }
}
