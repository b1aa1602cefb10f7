use std::fmt;

use serde::Serialize;

use crate::registry::Constraint;
use crate::semantics::{Origin, SlotPath};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolatedConstraint {
    pub id: String,
    pub label: String,
}

impl From<&Constraint> for ViolatedConstraint {
    fn from(c: &Constraint) -> Self {
        ViolatedConstraint {
            id: c.id.clone(),
            label: c.label.clone(),
        }
    }
}

impl fmt::Display for ViolatedConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.id, self.label)
    }
}

/// One value the solver tried for the failing slot and why it was dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriedCandidate {
    pub candidate: String,
    pub origin: Origin,
    /// Ids of the constraints that eliminated it.
    pub violated: Vec<String>,
    pub reason: &'static str,
}

impl TriedCandidate {
    pub(super) fn rejected(candidate: String, origin: Origin, violated: &[Constraint]) -> Self {
        TriedCandidate {
            candidate,
            origin,
            violated: violated.iter().map(|c| c.id.clone()).collect(),
            reason: "violates constraints",
        }
    }

    pub(super) fn failed_inside(candidate: String, origin: Origin) -> Self {
        TriedCandidate {
            candidate,
            origin,
            violated: Vec::new(),
            reason: "its own slots cannot be satisfied",
        }
    }

    pub(super) fn failed_later(candidate: String, origin: Origin) -> Self {
        TriedCandidate {
            candidate,
            origin,
            violated: Vec::new(),
            reason: "later slots cannot be satisfied",
        }
    }
}

impl fmt::Display for TriedCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.candidate, self.origin)
    }
}

/// Failure report of an unsolvable configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unsolvable {
    pub path: SlotPath,
    pub tried: Vec<TriedCandidate>,
    pub violated: Vec<ViolatedConstraint>,
    /// The failing value was given by the user, so the model itself is
    /// contradictory rather than merely lacking a workable default.
    pub overdetermined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Unsolvable {
    pub(super) fn new(path: SlotPath, tried: Vec<TriedCandidate>, violated: &[Constraint], overdetermined: bool) -> Self {
        Unsolvable {
            path,
            tried,
            violated: violated.iter().map(ViolatedConstraint::from).collect(),
            overdetermined,
            detail: None,
        }
    }

    pub(super) fn detail(path: SlotPath, detail: &str) -> Self {
        Unsolvable {
            path,
            tried: Vec::new(),
            violated: Vec::new(),
            overdetermined: false,
            detail: Some(detail.to_string()),
        }
    }

    pub fn violated_ids(&self) -> Vec<&str> {
        self.violated.iter().map(|v| v.id.as_str()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("failure report serializes")
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    if items.is_empty() {
        return "none".into();
    }
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Unsolvable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot satisfy {}: tried {}; violated: {}",
            self.path,
            join(&self.tried),
            join(&self.violated)
        )?;
        if let Some(detail) = &self.detail {
            write!(f, " ({detail})")?;
        }
        if self.overdetermined {
            f.write_str(" [overdetermined: the user-specified value conflicts]")?;
        }
        Ok(())
    }
}
