use indexmap::IndexMap;

use crate::registry::{Binding, ConfigurationView, Constraint, Registry, Verdict};

/// Slot bindings of one component instance together with the constraints
/// currently in force on it.
///
/// Active constraints are the owning class's constraints plus the implied
/// constraints of whatever is bound right now; unbinding a slot withdraws the
/// constraints its value brought in.
#[derive(Debug, Clone)]
pub struct PartialConfiguration<'r> {
    registry: &'r Registry,
    bindings: IndexMap<String, Binding>,
    base: Vec<Constraint>,
    implied: IndexMap<String, Vec<Constraint>>,
}

impl<'r> PartialConfiguration<'r> {
    pub fn new(registry: &'r Registry, base: Vec<Constraint>) -> Self {
        PartialConfiguration {
            registry,
            bindings: IndexMap::new(),
            base,
            implied: IndexMap::new(),
        }
    }

    pub fn bind(&mut self, slot: &str, binding: Binding, implied: Vec<Constraint>) {
        self.bindings.insert(slot.to_string(), binding);
        if implied.is_empty() {
            self.implied.shift_remove(slot);
        } else {
            self.implied.insert(slot.to_string(), implied);
        }
    }

    pub fn unbind(&mut self, slot: &str) {
        self.bindings.shift_remove(slot);
        self.implied.shift_remove(slot);
    }

    pub fn is_bound(&self, slot: &str) -> bool {
        self.bindings.contains_key(slot)
    }

    pub fn active_constraints(&self) -> impl Iterator<Item = &Constraint> {
        self.base.iter().chain(self.implied.values().flatten())
    }

    pub fn implied_by(&self, slot: &str) -> &[Constraint] {
        self.implied.get(slot).map_or(&[], Vec::as_slice)
    }

    pub fn verdict(&self, constraint: &Constraint) -> Verdict {
        constraint.evaluate(self.registry, self)
    }

    /// Active constraints that mention `slot` or were implied by its value,
    /// and are violated.
    pub fn violations_at(&self, slot: &str) -> Vec<&Constraint> {
        let own = self.implied_by(slot);
        self.active_constraints()
            .filter(|c| c.slots().contains(&slot) || own.contains(c))
            .filter(|c| self.verdict(c) == Verdict::Violated)
            .collect()
    }

    /// Active constraints that are not satisfied.
    pub fn unsatisfied(&self) -> Vec<&Constraint> {
        self.active_constraints()
            .filter(|c| self.verdict(c) != Verdict::Satisfied)
            .collect()
    }
}

impl ConfigurationView for PartialConfiguration<'_> {
    fn binding(&self, slot: &str) -> Binding {
        self.bindings.get(slot).copied().unwrap_or(Binding::Unbound)
    }
}
