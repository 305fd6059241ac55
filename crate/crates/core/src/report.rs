//! Pass/fail records shared by the verification suites.

use serde::Serialize;

/// Outcome of one axiom or identity, with the first counterexample found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomStatus {
    pub axiom: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomStatus {
    pub fn new(axiom: &str) -> Self {
        AxiomStatus { axiom: axiom.to_string(), passed: true, checked: 0, witness: None }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

/// A verification suite run on one presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub presentation: String,
    pub passed: bool,
    pub axioms: Vec<AxiomStatus>,
}

impl Report {
    pub fn new(suite: &str, presentation: String, axioms: Vec<AxiomStatus>) -> Self {
        Report { suite: suite.to_string(), presentation, passed: axioms.iter().all(|a| a.passed), axioms }
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomStatus> {
        self.axioms.iter().find(|a| a.axiom == name)
    }
}
