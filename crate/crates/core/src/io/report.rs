use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::kstheory::{Report, Verdict};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// What one CLI command found. Everything but `timing` is a function of the
/// inputs and the seed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `pass`, `negative`, `inconclusive` or `error`.
    pub outcome: String,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub idempotents: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    /// Free-form facts: dimensions, counts, messages.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, serde_json::Value>,
    pub timing: Timing,
}

impl CommandReport {
    pub fn new(command: &str, inputs: &[&str]) -> CommandReport {
        CommandReport {
            command: command.to_string(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            ..CommandReport::default()
        }
    }

    pub fn absorb(&mut self, prefix: &str, r: &Report) {
        for v in &r.verdicts {
            let name = if prefix.is_empty() {
                v.name.clone()
            } else {
                format!("{prefix}/{}", v.name)
            };
            self.verdicts.push(Verdict { name, passed: v.passed });
        }
    }

    pub fn fact(&mut self, key: &str, value: impl Serialize) {
        self.facts
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(serde_json::Value::Null));
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.inputs.join(" "));
        let _ = writeln!(s, "outcome: {}", self.outcome);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        if let Some(c) = self.complete {
            let _ = writeln!(s, "complete: {c}");
        }
        for (k, v) in &self.facts {
            let _ = writeln!(s, "{k}: {v}");
        }
        for (k, e) in self.idempotents.iter().enumerate() {
            let _ = writeln!(s, "e{k} = [{}]", e.join(", "));
        }
        if let Some(p) = &self.permutation {
            let parts: Vec<String> = p.iter().enumerate().map(|(k, l)| format!("{k}->{l}")).collect();
            let _ = writeln!(s, "permutation: {}", parts.join(" "));
        }
        let failed = self.verdicts.iter().filter(|v| !v.passed).count();
        let _ = writeln!(s, "identities: {} checked, {failed} failed", self.verdicts.len());
        for v in self.verdicts.iter().filter(|v| !v.passed) {
            let _ = writeln!(s, "  FAIL {}", v.name);
        }
        let _ = writeln!(s, "elapsed: {} ms", self.timing.elapsed_ms);
        s
    }
}
