//! Structured verification reports.
//!
//! Violations are data, not errors: a checker always runs to completion and
//! returns every defect it found, with the witness arguments and the exact
//! nonzero defect vector. Defects are the primary debugging artifact when
//! chasing sign conventions, so they are kept exact and ordered.

use crate::graded::GradedVector;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// Stable identifier of the violated identity, e.g. `"supercommutativity"`.
    pub identity: String,
    /// The basis labels (in argument order) at which the identity failed.
    pub witness: Vec<String>,
    /// The exact nonzero defect, label → coefficient.
    pub defect: BTreeMap<String, String>,
}

impl Violation {
    pub fn new(identity: &str, witness: Vec<String>, defect: &GradedVector) -> Violation {
        Violation {
            identity: identity.to_string(),
            witness,
            defect: defect.to_string_map(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// What was checked (an algebra name or an operation description).
    pub subject: String,
    /// Index window used, when the subject is an infinite family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    /// Number of identity instances evaluated.
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Extra observed properties (e.g. unitality), never axioms.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub notes: BTreeMap<String, String>,
}

impl Report {
    pub fn new(subject: &str) -> Report {
        Report {
            subject: subject.to_string(),
            window: None,
            checked: 0,
            violations: Vec::new(),
            notes: BTreeMap::new(),
        }
    }

    pub fn with_window(mut self, w: String) -> Report {
        self.window = Some(w);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, identity: &str, witness: Vec<String>, defect: &GradedVector) {
        self.checked += 1;
        if !defect.is_zero() {
            self.violations.push(Violation::new(identity, witness, defect));
        }
    }

    /// Identities that have at least one violation, deduplicated, in order.
    pub fn violated_identities(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.identity) {
                seen.push(v.identity.clone());
            }
        }
        seen
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        for (k, v) in other.notes {
            self.notes.insert(k, v);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.subject)?;
        if let Some(w) = &self.window {
            write!(f, "[window {w}] ")?;
        }
        if self.passed() {
            write!(f, "pass ({} instances checked)", self.checked)
        } else {
            writeln!(f, "FAIL ({} violations / {} instances)", self.violations.len(), self.checked)?;
            for v in &self.violations {
                writeln!(f, "  {} at ({}): {:?}", v.identity, v.witness.join(", "), v.defect)?;
            }
            Ok(())
        }
    }
}
