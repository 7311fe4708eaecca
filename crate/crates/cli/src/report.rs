//! The JSON document printed by every subcommand.

use std::collections::BTreeMap;

use cayley_ci_core::ci::Check;
use serde::Serialize;
use serde_json::Value;

/// A claim is a named expected/actual comparison; `pass` is decided when it is built.
pub type Claim = Check;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub claims: Vec<Claim>,
    /// Measured values that are reported but not asserted.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub observations: BTreeMap<String, Value>,
    pub runtime_ms: u64,
    pub artifact_paths: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            ..Report::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn observe(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.observations.insert(key.to_string(), value.into());
        self
    }

    pub fn claim(&mut self, claim: Claim) -> &mut Self {
        self.claims.push(claim);
        self
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    /// Folds a sub-report in, tagging its claims and observations with `tag`.
    pub fn absorb(&mut self, tag: &str, sub: Report) {
        for mut c in sub.claims {
            c.name = format!("[{tag}] {}", c.name);
            self.claims.push(c);
        }
        for (k, v) in sub.observations {
            self.observations.insert(format!("[{tag}] {k}"), v);
        }
        self.artifact_paths.extend(sub.artifact_paths);
        self.runtime_ms += sub.runtime_ms;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_reflects_every_claim() {
        let mut r = Report::new("x");
        assert!(r.passed());
        r.claim(Check::new("a", 1, 1));
        assert!(r.passed());
        r.claim(Check::new("b", 1, 2));
        assert!(!r.passed());
    }

    #[test]
    fn absorb_tags_claims() {
        let mut sub = Report::new("orbits");
        sub.claim(Check::flag("ok", true)).observe("k", 3);
        sub.artifact_paths.push("a.txt".into());
        sub.runtime_ms = 5;
        let mut all = Report::new("all");
        all.absorb("orbits q=3", sub);
        assert_eq!(all.claims[0].name, "[orbits q=3] ok");
        assert_eq!(all.observations["[orbits q=3] k"], 3);
        assert_eq!(all.artifact_paths, ["a.txt"]);
        assert_eq!(all.runtime_ms, 5);
    }

    #[test]
    fn empty_observations_are_omitted() {
        let json = serde_json::to_string(&Report::new("x")).unwrap();
        assert!(!json.contains("observations"));
        assert!(json.contains("\"runtime_ms\":0"));
    }
}
