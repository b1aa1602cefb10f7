//! The component library: classes, their slots, ordered default candidates
//! and compatibility constraints.
//!
//! A [`Registry`] is immutable once built. [`RegistryBuilder::build`] audits the
//! library so that every later stage can assume class references resolve,
//! defaults are well-typed, and constraints only mention existing slots.

pub mod constraint;
mod dump;
pub mod seed;

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::value::{Literal, NumericRange, PrimitiveKind};

pub use constraint::{Binding, Condition, ConfigurationView, Constraint, Verdict};
pub use dump::RegistryDump;
pub use seed::seed_registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(u32);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SlotKind {
    Component(ClassId),
    List(ClassId),
    Primitive {
        kind: PrimitiveKind,
        range: Option<NumericRange>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum DefaultValue {
    Component(ClassId),
    List(Vec<ClassId>),
    Primitive(Literal),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefaultCandidate {
    pub value: DefaultValue,
    /// Constraints that join the owning component's active set while this
    /// candidate (or an equal user value) is bound.
    pub implied: Vec<Constraint>,
    /// Fixed values for the produced component's own slots.
    pub presets: Vec<(String, Literal)>,
}

impl DefaultCandidate {
    pub fn component(class: ClassId) -> Self {
        DefaultCandidate {
            value: DefaultValue::Component(class),
            implied: Vec::new(),
            presets: Vec::new(),
        }
    }

    pub fn list(members: Vec<ClassId>) -> Self {
        DefaultCandidate {
            value: DefaultValue::List(members),
            implied: Vec::new(),
            presets: Vec::new(),
        }
    }

    pub fn primitive(value: Literal) -> Self {
        DefaultCandidate {
            value: DefaultValue::Primitive(value),
            implied: Vec::new(),
            presets: Vec::new(),
        }
    }

    pub fn implying(mut self, constraint: Constraint) -> Self {
        self.implied.push(constraint);
        self
    }

    pub fn with_preset(mut self, slot: impl Into<String>, value: Literal) -> Self {
        self.presets.push((slot.into(), value));
        self
    }

    pub fn produced_class(&self) -> Option<ClassId> {
        match self.value {
            DefaultValue::Component(class) => Some(class),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlotSpec {
    pub name: String,
    pub kind: SlotKind,
    pub required: bool,
    /// Preference order: index 0 is tried first.
    pub defaults: Vec<DefaultCandidate>,
}

impl SlotSpec {
    pub fn new(name: impl Into<String>, kind: SlotKind) -> Self {
        SlotSpec {
            name: name.into(),
            kind,
            required: false,
            defaults: Vec::new(),
        }
    }

    pub fn component(name: impl Into<String>, expected: ClassId) -> Self {
        SlotSpec::new(name, SlotKind::Component(expected))
    }

    pub fn list(name: impl Into<String>, member: ClassId) -> Self {
        SlotSpec::new(name, SlotKind::List(member))
    }

    pub fn primitive(name: impl Into<String>, kind: PrimitiveKind) -> Self {
        SlotSpec::new(name, SlotKind::Primitive { kind, range: None })
    }

    pub fn within(mut self, range: NumericRange) -> Self {
        if let SlotKind::Primitive { range: r, .. } = &mut self.kind {
            *r = Some(range);
        }
        self
    }

    pub fn required(mut self) -> Self {
        self.required = true;
        self.defaults.clear();
        self
    }

    pub fn default(mut self, candidate: DefaultCandidate) -> Self {
        self.defaults.push(candidate);
        self
    }

    pub fn defaults(mut self, candidates: impl IntoIterator<Item = DefaultCandidate>) -> Self {
        self.defaults.extend(candidates);
        self
    }

    /// The default candidate whose produced class is `class`, used to find
    /// the implied constraints of a matching user value.
    pub fn candidate_for(&self, class: ClassId) -> Option<&DefaultCandidate> {
        self.defaults
            .iter()
            .find(|c| c.produced_class() == Some(class))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentClass {
    pub name: String,
    /// Identifier that selects this class in source text.
    pub keyword: Option<String>,
    pub parent: Option<ClassId>,
    pub is_abstract: bool,
    pub slots: Vec<SlotSpec>,
    /// Constraints among this class's own slots.
    pub constraints: Vec<Constraint>,
}

impl ComponentClass {
    pub fn slot(&self, name: &str) -> Option<&SlotSpec> {
        self.slots.iter().find(|s| s.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("duplicate class name '{0}'")]
    DuplicateClass(String),
    #[error("class '{0}' has an ancestry cycle")]
    Cycle(String),
    #[error("class '{class}' declares slot '{slot}' twice")]
    DuplicateSlot { class: String, slot: String },
    #[error("{class}.{slot}: {message}")]
    Slot {
        class: String,
        slot: String,
        message: String,
    },
    #[error("constraint {id} on '{class}': {message}")]
    Constraint {
        class: String,
        id: String,
        message: String,
    },
    #[error("keyword '{keyword}' is ambiguous among subclasses of '{expected}'")]
    AmbiguousKeyword { expected: String, keyword: String },
    #[error("root class '{0}' must be concrete")]
    AbstractRoot(String),
    #[error("unregistered class '{0}'")]
    UnknownClass(String),
}

#[derive(Debug, Clone)]
pub struct Registry {
    classes: Vec<ComponentClass>,
    by_name: HashMap<String, ClassId>,
    root: ClassId,
}

impl Registry {
    pub fn root(&self) -> ClassId {
        self.root
    }

    pub fn class(&self, id: ClassId) -> &ComponentClass {
        &self.classes[id.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<ClassId> {
        self.by_name.get(name).copied()
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        (0..self.classes.len()).map(|i| ClassId(i as u32))
    }

    pub fn is_subclass(&self, class: ClassId, ancestor: ClassId) -> bool {
        let mut current = Some(class);
        while let Some(c) = current {
            if c == ancestor {
                return true;
            }
            current = self.class(c).parent;
        }
        false
    }

    /// Concrete classes usable where `expected` is required, in registration
    /// order.
    pub fn concrete_subclasses(&self, expected: ClassId) -> Vec<ClassId> {
        self.class_ids()
            .filter(|&c| !self.class(c).is_abstract && self.is_subclass(c, expected))
            .collect()
    }

    /// Every compatibility constraint in the library with the class it is
    /// scoped to.
    pub fn compatibility_constraints(&self) -> Vec<(ClassId, &Constraint)> {
        self.class_ids()
            .flat_map(|c| self.class(c).constraints.iter().map(move |k| (c, k)))
            .collect()
    }

    /// Finds a constraint by id anywhere in the library.
    pub fn constraint(&self, id: &str) -> Option<&Constraint> {
        self.compatibility_constraints()
            .into_iter()
            .map(|(_, c)| c)
            .find(|c| c.id == id)
    }

    pub fn dump(&self) -> RegistryDump {
        RegistryDump::new(self)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Default)]
pub struct RegistryBuilder {
    classes: Vec<ComponentClass>,
}

impl RegistryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, class: ComponentClass) -> ClassId {
        let id = ClassId(self.classes.len() as u32);
        self.classes.push(class);
        id
    }

    pub fn abstract_class(&mut self, name: &str, parent: Option<ClassId>) -> ClassId {
        self.push(ComponentClass {
            name: name.to_string(),
            keyword: None,
            parent,
            is_abstract: true,
            slots: Vec::new(),
            constraints: Vec::new(),
        })
    }

    pub fn component(&mut self, name: &str, keyword: Option<&str>, parent: Option<ClassId>) -> ClassId {
        self.push(ComponentClass {
            name: name.to_string(),
            keyword: keyword.map(str::to_string),
            parent,
            is_abstract: false,
            slots: Vec::new(),
            constraints: Vec::new(),
        })
    }

    pub fn slot(&mut self, class: ClassId, slot: SlotSpec) -> &mut Self {
        self.classes[class.index()].slots.push(slot);
        self
    }

    pub fn constraint(&mut self, class: ClassId, constraint: Constraint) -> &mut Self {
        self.classes[class.index()].constraints.push(constraint);
        self
    }

    /// Audits the library and freezes it with `root` as the project class.
    pub fn build(self, root: ClassId) -> Result<Registry, AuditError> {
        let mut by_name = HashMap::new();
        for (i, class) in self.classes.iter().enumerate() {
            if by_name.insert(class.name.clone(), ClassId(i as u32)).is_some() {
                return Err(AuditError::DuplicateClass(class.name.clone()));
            }
        }
        let registry = Registry {
            classes: self.classes,
            by_name,
            root,
        };
        audit(&registry)?;
        Ok(registry)
    }
}

fn audit(registry: &Registry) -> Result<(), AuditError> {
    let n = registry.classes.len();
    let known = |id: ClassId| -> Result<(), AuditError> {
        if id.index() < n {
            Ok(())
        } else {
            Err(AuditError::UnknownClass(id.to_string()))
        }
    };
    known(registry.root)?;
    if registry.class(registry.root).is_abstract {
        return Err(AuditError::AbstractRoot(registry.class(registry.root).name.clone()));
    }

    for id in registry.class_ids() {
        let class = registry.class(id);
        // Forest check: walking parents must terminate within n steps.
        let mut current = class.parent;
        let mut steps = 0;
        while let Some(p) = current {
            known(p)?;
            steps += 1;
            if steps > n {
                return Err(AuditError::Cycle(class.name.clone()));
            }
            current = registry.class(p).parent;
        }

        let mut seen = HashSet::new();
        for slot in &class.slots {
            if !seen.insert(slot.name.as_str()) {
                return Err(AuditError::DuplicateSlot {
                    class: class.name.clone(),
                    slot: slot.name.clone(),
                });
            }
            audit_slot(registry, class, slot)?;
        }
        for constraint in &class.constraints {
            audit_constraint(registry, id, constraint)?;
        }
    }

    // Keywords must be unambiguous within every resolving table.
    for id in registry.class_ids() {
        let mut keywords = HashSet::new();
        for sub in registry.concrete_subclasses(id) {
            if let Some(keyword) = &registry.class(sub).keyword {
                if !keywords.insert(keyword.as_str()) {
                    return Err(AuditError::AmbiguousKeyword {
                        expected: registry.class(id).name.clone(),
                        keyword: keyword.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn audit_slot(registry: &Registry, class: &ComponentClass, slot: &SlotSpec) -> Result<(), AuditError> {
    let fail = |message: String| AuditError::Slot {
        class: class.name.clone(),
        slot: slot.name.clone(),
        message,
    };
    if slot.required != slot.defaults.is_empty() {
        return Err(fail(if slot.required {
            "required slots cannot have defaults".into()
        } else {
            "optional slots need at least one default".into()
        }));
    }
    let instantiable = |c: ClassId, expected: ClassId| -> Result<(), AuditError> {
        if c.index() >= registry.classes.len() {
            return Err(fail(format!("default references unregistered class {c}")));
        }
        let candidate = registry.class(c);
        if candidate.is_abstract || !registry.is_subclass(c, expected) {
            return Err(fail(format!(
                "default '{}' is not a concrete subclass of '{}'",
                candidate.name,
                registry.class(expected).name
            )));
        }
        if candidate.keyword.is_none() {
            return Err(fail(format!("default '{}' has no source keyword", candidate.name)));
        }
        if let Some(required) = candidate.slots.iter().find(|s| s.required) {
            return Err(fail(format!(
                "default '{}' cannot be interpolated: its slot '{}' is required",
                candidate.name, required.name
            )));
        }
        Ok(())
    };
    let expected = match &slot.kind {
        SlotKind::Component(e) | SlotKind::List(e) => {
            if e.index() >= registry.classes.len() {
                return Err(fail(format!("expects unregistered class {e}")));
            }
            if registry.concrete_subclasses(*e).is_empty() {
                return Err(fail(format!(
                    "no concrete subclass of '{}' is registered",
                    registry.class(*e).name
                )));
            }
            Some(*e)
        }
        SlotKind::Primitive { .. } => None,
    };
    for candidate in &slot.defaults {
        match (&slot.kind, &candidate.value) {
            (SlotKind::Component(_), DefaultValue::Component(c)) => {
                instantiable(*c, expected.expect("component slot"))?;
                let produced = registry.class(*c);
                for (preset, value) in &candidate.presets {
                    match produced.slot(preset).map(|s| &s.kind) {
                        Some(SlotKind::Primitive { kind, .. }) if literal_fits(*kind, value) => {}
                        _ => {
                            return Err(fail(format!(
                                "preset '{preset}' is not a matching primitive slot of '{}'",
                                produced.name
                            )))
                        }
                    }
                }
            }
            (SlotKind::List(_), DefaultValue::List(members)) => {
                for m in members {
                    instantiable(*m, expected.expect("list slot"))?;
                }
            }
            (SlotKind::Primitive { kind, .. }, DefaultValue::Primitive(v)) if literal_fits(*kind, v) => {}
            _ => return Err(fail("default does not match the slot kind".into())),
        }
        if !matches!(candidate.value, DefaultValue::Component(_)) && !candidate.presets.is_empty() {
            return Err(fail("only component defaults may carry presets".into()));
        }
        for implied in &candidate.implied {
            check_constraint_slots(registry, class, implied).map_err(|message| {
                AuditError::Constraint {
                    class: class.name.clone(),
                    id: implied.id.clone(),
                    message,
                }
            })?;
        }
    }
    Ok(())
}

pub(crate) fn literal_fits(kind: PrimitiveKind, value: &Literal) -> bool {
    matches!(
        (kind, value),
        (PrimitiveKind::Integer, Literal::Integer(_))
            | (PrimitiveKind::Decimal, Literal::Decimal(_))
            | (PrimitiveKind::String, Literal::Str(_))
            | (PrimitiveKind::Boolean, Literal::Boolean(_))
            | (PrimitiveKind::Predicate, Literal::Predicate(_))
    )
}

fn audit_constraint(registry: &Registry, scope: ClassId, constraint: &Constraint) -> Result<(), AuditError> {
    let class = registry.class(scope);
    check_constraint_slots(registry, class, constraint).map_err(|message| AuditError::Constraint {
        class: class.name.clone(),
        id: constraint.id.clone(),
        message,
    })
}

/// Conditions may only mention component slots of their scope class, and
/// class tests must name classes those slots can hold.
fn check_constraint_slots(
    registry: &Registry,
    scope: &ComponentClass,
    constraint: &Constraint,
) -> Result<(), String> {
    for condition in [&constraint.antecedent, &constraint.consequent] {
        let slot = scope
            .slot(condition.slot())
            .ok_or_else(|| format!("no slot '{}'", condition.slot()))?;
        match condition {
            Condition::Is { class, .. } | Condition::IsNot { class, .. } => {
                let SlotKind::Component(expected) = slot.kind else {
                    return Err(format!("slot '{}' is not a component slot", slot.name));
                };
                if class.index() >= registry.classes.len() {
                    return Err(format!("unregistered class {class}"));
                }
                if !registry.is_subclass(*class, expected) {
                    return Err(format!(
                        "'{}' can never occupy slot '{}'",
                        registry.class(*class).name,
                        slot.name
                    ));
                }
            }
            Condition::Bound { .. } => {}
        }
    }
    Ok(())
}
