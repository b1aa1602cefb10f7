//! Compatibility constraints between the slots of one component instance.
//!
//! A constraint is an implication between two conditions on sibling slots.
//! Evaluation is three-valued so it can run on partial configurations: a
//! condition on an unbound slot is undecided until that slot is bound.

use std::fmt;

use serde::Serialize;

use super::{ClassId, Registry};

/// What a configuration currently holds for one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    Unbound,
    Component(ClassId),
    /// Bound to a primitive or list value, which conditions cannot inspect.
    Value,
}

/// Read access to the slot bindings of a single component instance.
pub trait ConfigurationView {
    fn binding(&self, slot: &str) -> Binding;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// The slot holds the class or one of its subclasses.
    Is { slot: String, class: ClassId },
    IsNot { slot: String, class: ClassId },
    /// The slot holds any value.
    Bound { slot: String },
}

impl Condition {
    pub fn is(slot: impl Into<String>, class: ClassId) -> Condition {
        Condition::Is {
            slot: slot.into(),
            class,
        }
    }

    pub fn is_not(slot: impl Into<String>, class: ClassId) -> Condition {
        Condition::IsNot {
            slot: slot.into(),
            class,
        }
    }

    pub fn bound(slot: impl Into<String>) -> Condition {
        Condition::Bound { slot: slot.into() }
    }

    pub fn slot(&self) -> &str {
        match self {
            Condition::Is { slot, .. } | Condition::IsNot { slot, .. } | Condition::Bound { slot } => {
                slot
            }
        }
    }

    /// `Some(truth)` once decided, `None` while the slot is unbound.
    fn evaluate(&self, registry: &Registry, cfg: &dyn ConfigurationView) -> Option<bool> {
        let binding = cfg.binding(self.slot());
        match self {
            Condition::Bound { .. } => match binding {
                Binding::Unbound => None,
                _ => Some(true),
            },
            Condition::Is { class, .. } | Condition::IsNot { class, .. } => {
                let holds = match binding {
                    Binding::Unbound => return None,
                    Binding::Component(bound) => registry.is_subclass(bound, *class),
                    Binding::Value => false,
                };
                Some(holds == matches!(self, Condition::Is { .. }))
            }
        }
    }

    fn render(&self, registry: &Registry) -> String {
        match self {
            Condition::Is { slot, class } => format!("{slot} = {}", registry.class(*class).name),
            Condition::IsNot { slot, class } => {
                format!("{slot} != {}", registry.class(*class).name)
            }
            Condition::Bound { slot } => format!("{slot} is set"),
        }
    }
}

/// `antecedent ⇒ consequent` over the slots of one component instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub id: String,
    pub label: String,
    pub antecedent: Condition,
    pub consequent: Condition,
}

impl Constraint {
    pub fn implies(
        id: impl Into<String>,
        label: impl Into<String>,
        antecedent: Condition,
        consequent: Condition,
    ) -> Constraint {
        Constraint {
            id: id.into(),
            label: label.into(),
            antecedent,
            consequent,
        }
    }

    /// Forbids the pair `left = a` together with `right = b`.
    pub fn forbid_pair(
        id: impl Into<String>,
        left: (&str, ClassId),
        right: (&str, ClassId),
    ) -> Constraint {
        let id = id.into();
        Constraint {
            label: format!("{} excludes {}", left.0, right.0),
            id,
            antecedent: Condition::is(left.0, left.1),
            consequent: Condition::is_not(right.0, right.1),
        }
    }

    pub fn evaluate(&self, registry: &Registry, cfg: &dyn ConfigurationView) -> Verdict {
        match self.antecedent.evaluate(registry, cfg) {
            Some(false) => Verdict::Satisfied,
            Some(true) => match self.consequent.evaluate(registry, cfg) {
                Some(true) => Verdict::Satisfied,
                Some(false) => Verdict::Violated,
                None => Verdict::Undecided,
            },
            None => match self.consequent.evaluate(registry, cfg) {
                Some(true) => Verdict::Satisfied,
                _ => Verdict::Undecided,
            },
        }
    }

    pub fn slots(&self) -> [&str; 2] {
        [self.antecedent.slot(), self.consequent.slot()]
    }

    pub fn render(&self, registry: &Registry) -> String {
        format!(
            "{}: {} => {} ({})",
            self.id,
            self.antecedent.render(registry),
            self.consequent.render(registry),
            self.label
        )
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.id, self.label)
    }
}
