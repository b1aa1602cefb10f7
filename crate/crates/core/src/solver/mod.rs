//! Default interpolation by depth-first backtracking.
//!
//! Each component instance solves its own slots in declaration order. User
//! values are singleton domains; every other slot tries its default
//! candidates in preference order. A compound candidate is only accepted
//! once its own slots have been solved, so configuration problems nest.

mod config;
mod failure;

use std::cmp::Ordering;

use serde::Serialize;

pub use config::PartialConfiguration;
pub use failure::{TriedCandidate, Unsolvable, ViolatedConstraint};

use crate::registry::{
    Binding, ClassId, ComponentClass, Constraint, DefaultCandidate, DefaultValue, Registry, SlotKind, SlotSpec,
};
use crate::semantics::{ListNode, MapNode, ObjectNode, Origin, PrimitiveNode, SlotPath};
use crate::syntax::SourceSpan;
use crate::value::Literal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotSource {
    User,
    Interpolatable,
}

/// One value the solver must fix.
#[derive(Debug, Clone, PartialEq)]
pub struct Slot {
    pub path: SlotPath,
    pub kind: SlotKind,
    pub source: SlotSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolverOutcome {
    Solved(ObjectNode),
    Unsolvable(Unsolvable),
}

impl SolverOutcome {
    pub fn solved(&self) -> Option<&ObjectNode> {
        match self {
            SolverOutcome::Solved(tree) => Some(tree),
            SolverOutcome::Unsolvable(_) => None,
        }
    }

    pub fn into_result(self) -> Result<ObjectNode, Unsolvable> {
        match self {
            SolverOutcome::Solved(tree) => Ok(tree),
            SolverOutcome::Unsolvable(failure) => Err(failure),
        }
    }
}

/// Search effort of one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    /// Tentative bindings of a candidate (or user value) to a slot.
    pub bindings_tried: u64,
    /// Times the root component reached a full assignment of its slots.
    pub complete_assignments: u64,
}

/// Fills every unspecified slot of a translated, fully determined tree.
pub fn interpolate(root: &ObjectNode, registry: &Registry) -> SolverOutcome {
    Solver::new(registry).solve(root).0
}

/// Slots of `node` in the order the solver visits them. Primitive and list
/// nodes own no slots of their own.
pub fn solve_order(node: &ObjectNode, path: &SlotPath, registry: &Registry) -> Vec<Slot> {
    let Some(map) = node.as_map() else {
        return Vec::new();
    };
    registry
        .class(map.class)
        .slots
        .iter()
        .map(|spec| Slot {
            path: path.child(&spec.name),
            kind: spec.kind.clone(),
            source: if map.slot(&spec.name).is_some() {
                SlotSource::User
            } else {
                SlotSource::Interpolatable
            },
        })
        .collect()
}

/// Checks one candidate against a partial configuration by binding it
/// tentatively. Only constraints that mention `slot` or come with the
/// candidate are evaluated; the rest were settled when their own slots
/// were bound. Returns the violated constraints.
pub fn validate_candidate(
    candidate: &DefaultCandidate,
    slot: &str,
    cfg: &PartialConfiguration<'_>,
) -> Result<(), Vec<Constraint>> {
    let mut trial = cfg.clone();
    trial.bind(slot, candidate_binding(candidate), candidate.implied.clone());
    let violated: Vec<Constraint> = trial.violations_at(slot).into_iter().cloned().collect();
    if violated.is_empty() {
        Ok(())
    } else {
        Err(violated)
    }
}

fn candidate_binding(candidate: &DefaultCandidate) -> Binding {
    match &candidate.value {
        DefaultValue::Component(class) => Binding::Component(*class),
        DefaultValue::List(_) | DefaultValue::Primitive(_) => Binding::Value,
    }
}

fn node_binding(node: &ObjectNode) -> Binding {
    match node {
        ObjectNode::Map(m) => Binding::Component(m.class),
        _ => Binding::Value,
    }
}

/// The default candidate equal to a user value, whose implied constraints
/// the user value inherits.
fn matching_candidate<'s>(spec: &'s SlotSpec, node: &ObjectNode) -> Option<&'s DefaultCandidate> {
    spec.defaults.iter().find(|c| match (&c.value, node) {
        (DefaultValue::Component(class), ObjectNode::Map(m)) => *class == m.class,
        (DefaultValue::List(classes), ObjectNode::List(l)) => {
            classes.len() == l.items.len()
                && classes.iter().zip(&l.items).all(|(c, item)| item.class() == Some(*c))
        }
        (DefaultValue::Primitive(lit), ObjectNode::Primitive(p)) => *lit == p.value,
        _ => false,
    })
}

#[derive(Clone, Copy)]
enum Fixed<'a> {
    User(&'a ObjectNode),
    Preset(&'a Literal),
}

/// Search state of one component instance.
struct Frame<'r, 'a> {
    class: &'r ComponentClass,
    fixed: Vec<Option<Fixed<'a>>>,
    chosen: Vec<Option<ObjectNode>>,
    cfg: PartialConfiguration<'r>,
    path: SlotPath,
    /// Slot and list indices from the root; orders failures by how far the
    /// search got.
    position: Vec<usize>,
    origin: Origin,
}

pub struct Solver<'r> {
    registry: &'r Registry,
    stats: SolverStats,
    failure: Option<(Vec<usize>, Unsolvable)>,
}

impl<'r> Solver<'r> {
    pub fn new(registry: &'r Registry) -> Self {
        Solver {
            registry,
            stats: SolverStats::default(),
            failure: None,
        }
    }

    /// Solves from the root. On failure the report is the one recorded
    /// furthest along the solve order.
    pub fn solve(mut self, root: &ObjectNode) -> (SolverOutcome, SolverStats) {
        let registry = self.registry;
        let path = SlotPath::root(&registry.class(registry.root()).name);
        let outcome = match root.as_map() {
            Some(map) => match self.solve_component(map.class, Some(map), &[], Origin::User, map.span, path, Vec::new())
            {
                Some(tree) => SolverOutcome::Solved(ObjectNode::Map(tree)),
                None => SolverOutcome::Unsolvable(
                    self.failure
                        .take()
                        .map(|(_, f)| f)
                        .unwrap_or_else(|| Unsolvable::detail(SlotPath::root("?"), "no solution")),
                ),
            },
            None => SolverOutcome::Unsolvable(Unsolvable::detail(path, "root is not a component")),
        };
        (outcome, self.stats)
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    fn record(&mut self, position: &[usize], failure: Unsolvable) {
        let further = match &self.failure {
            None => true,
            Some((best, _)) => position.cmp(best.as_slice()) == Ordering::Greater,
        };
        if further {
            self.failure = Some((position.to_vec(), failure));
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn solve_component<'a>(
        &mut self,
        class: ClassId,
        user: Option<&'a MapNode>,
        presets: &'a [(String, Literal)],
        origin: Origin,
        span: Option<SourceSpan>,
        path: SlotPath,
        position: Vec<usize>,
    ) -> Option<MapNode> {
        let registry = self.registry;
        let spec = registry.class(class);
        let mut cfg = PartialConfiguration::new(registry, spec.constraints.clone());
        let mut fixed = Vec::with_capacity(spec.slots.len());
        for (i, slot) in spec.slots.iter().enumerate() {
            let given = user.and_then(|m| m.slot(&slot.name)).map(Fixed::User).or_else(|| {
                presets
                    .iter()
                    .find(|(name, _)| *name == slot.name)
                    .map(|(_, lit)| Fixed::Preset(lit))
            });
            match given {
                Some(Fixed::User(node)) => {
                    let implied = matching_candidate(slot, node).map(|c| c.implied.clone()).unwrap_or_default();
                    cfg.bind(&slot.name, node_binding(node), implied);
                }
                Some(Fixed::Preset(_)) => cfg.bind(&slot.name, Binding::Value, Vec::new()),
                None if slot.required => {
                    let mut at = position.clone();
                    at.push(i);
                    self.record(
                        &at,
                        Unsolvable::detail(path.child(&slot.name), "required slot is missing and has no default"),
                    );
                    return None;
                }
                None => {}
            }
            fixed.push(given);
        }

        let mut frame = Frame {
            class: spec,
            chosen: vec![None; fixed.len()],
            fixed,
            cfg,
            path,
            position,
            origin,
        };
        if !self.backtrack(&mut frame, 0) {
            return None;
        }
        let slots = spec
            .slots
            .iter()
            .zip(frame.chosen)
            .map(|(s, node)| (s.name.clone(), node.expect("every slot bound on success")))
            .collect();
        Some(MapNode {
            class,
            slots,
            span,
            origin,
        })
    }

    fn backtrack(&mut self, frame: &mut Frame<'r, '_>, i: usize) -> bool {
        let class = frame.class;
        let Some(spec) = class.slots.get(i) else {
            if frame.position.is_empty() {
                self.stats.complete_assignments += 1;
            }
            let unsatisfied: Vec<Constraint> = frame.cfg.unsatisfied().into_iter().cloned().collect();
            if unsatisfied.is_empty() {
                return true;
            }
            let mut at = frame.position.clone();
            at.push(i);
            self.record(&at, Unsolvable::new(frame.path.clone(), Vec::new(), &unsatisfied, false));
            return false;
        };
        let slot_path = frame.path.child(&spec.name);
        let mut position = frame.position.clone();
        position.push(i);

        if let Some(fixed) = frame.fixed[i] {
            self.stats.bindings_tried += 1;
            let violated: Vec<Constraint> =
                frame.cfg.violations_at(&spec.name).into_iter().cloned().collect();
            let (name, is_user) = match fixed {
                Fixed::User(node) => (describe_node(self.registry, node), true),
                Fixed::Preset(lit) => (lit.to_string(), false),
            };
            let origin = if is_user { Origin::User } else { frame.origin };
            if !violated.is_empty() {
                let tried = vec![TriedCandidate::rejected(name, origin, &violated)];
                self.record(&position, Unsolvable::new(slot_path, tried, &violated, is_user));
                return false;
            }
            let node = match fixed {
                Fixed::User(node) => self.realize_user(node, &slot_path, &position),
                Fixed::Preset(lit) => Some(ObjectNode::Primitive(PrimitiveNode {
                    value: lit.clone(),
                    span: None,
                    origin: frame.origin,
                })),
            };
            let Some(node) = node else {
                let tried = vec![TriedCandidate::failed_inside(name, origin)];
                self.record(&position, Unsolvable::new(slot_path, tried, &[], is_user));
                return false;
            };
            frame.chosen[i] = Some(node);
            if self.backtrack(frame, i + 1) {
                return true;
            }
            frame.chosen[i] = None;
            return false;
        }

        let mut tried = Vec::new();
        let mut eliminated: Vec<Constraint> = Vec::new();
        for (k, candidate) in spec.defaults.iter().enumerate() {
            self.stats.bindings_tried += 1;
            let name = describe_candidate(self.registry, candidate);
            if let Err(violated) = validate_candidate(candidate, &spec.name, &frame.cfg) {
                tried.push(TriedCandidate::rejected(name, Origin::Default(k), &violated));
                for c in violated {
                    if !eliminated.contains(&c) {
                        eliminated.push(c);
                    }
                }
                continue;
            }
            frame.cfg.bind(&spec.name, candidate_binding(candidate), candidate.implied.clone());
            let Some(node) = self.realize_candidate(candidate, spec, k, &slot_path, &position) else {
                frame.cfg.unbind(&spec.name);
                tried.push(TriedCandidate::failed_inside(name, Origin::Default(k)));
                continue;
            };
            frame.chosen[i] = Some(node);
            if self.backtrack(frame, i + 1) {
                return true;
            }
            frame.chosen[i] = None;
            frame.cfg.unbind(&spec.name);
            tried.push(TriedCandidate::failed_later(name, Origin::Default(k)));
        }
        self.record(&position, Unsolvable::new(slot_path, tried, &eliminated, false));
        false
    }

    /// Solves the inside of a user value. Primitives are taken as given.
    fn realize_user(
        &mut self,
        node: &ObjectNode,
        path: &SlotPath,
        position: &[usize],
    ) -> Option<ObjectNode> {
        match node {
            ObjectNode::Map(map) => self
                .solve_component(map.class, Some(map), &[], Origin::User, map.span, path.clone(), position.to_vec())
                .map(ObjectNode::Map),
            ObjectNode::List(list) => {
                let mut items = Vec::with_capacity(list.items.len());
                for (j, item) in list.items.iter().enumerate() {
                    let mut at = position.to_vec();
                    at.push(j);
                    items.push(self.realize_user(item, &path.child(j), &at)?);
                }
                Some(ObjectNode::List(ListNode {
                    member_class: list.member_class,
                    items,
                    span: list.span,
                    origin: Origin::User,
                }))
            }
            ObjectNode::Primitive(p) => Some(ObjectNode::Primitive(PrimitiveNode {
                origin: Origin::User,
                ..p.clone()
            })),
        }
    }

    fn realize_candidate(
        &mut self,
        candidate: &DefaultCandidate,
        spec: &SlotSpec,
        k: usize,
        path: &SlotPath,
        position: &[usize],
    ) -> Option<ObjectNode> {
        let origin = Origin::Default(k);
        match &candidate.value {
            DefaultValue::Component(class) => self
                .solve_component(*class, None, &candidate.presets, origin, None, path.clone(), position.to_vec())
                .map(ObjectNode::Map),
            DefaultValue::List(classes) => {
                let mut items = Vec::with_capacity(classes.len());
                for (j, class) in classes.iter().enumerate() {
                    let mut at = position.to_vec();
                    at.push(j);
                    let item = self.solve_component(*class, None, &[], origin, None, path.child(j), at)?;
                    items.push(ObjectNode::Map(item));
                }
                let member_class = match spec.kind {
                    SlotKind::List(member) => member,
                    _ => unreachable!("audit pairs list defaults with list slots"),
                };
                Some(ObjectNode::List(ListNode {
                    member_class,
                    items,
                    span: None,
                    origin,
                }))
            }
            DefaultValue::Primitive(lit) => Some(ObjectNode::Primitive(PrimitiveNode {
                value: lit.clone(),
                span: None,
                origin,
            })),
        }
    }
}

fn class_label(registry: &Registry, class: ClassId) -> String {
    let class = registry.class(class);
    class.keyword.clone().unwrap_or_else(|| class.name.clone())
}

fn describe_candidate(registry: &Registry, candidate: &DefaultCandidate) -> String {
    match &candidate.value {
        DefaultValue::Component(class) => class_label(registry, *class),
        DefaultValue::List(classes) => {
            let names: Vec<String> = classes.iter().map(|c| class_label(registry, *c)).collect();
            format!("[{}]", names.join(", "))
        }
        DefaultValue::Primitive(lit) => lit.to_string(),
    }
}

fn describe_node(registry: &Registry, node: &ObjectNode) -> String {
    match node {
        ObjectNode::Map(m) => class_label(registry, m.class),
        ObjectNode::List(l) => {
            let names: Vec<String> = l.items.iter().map(|i| describe_node(registry, i)).collect();
            format!("[{}]", names.join(", "))
        }
        ObjectNode::Primitive(p) => p.value.to_string(),
    }
}

#[cfg(test)]
mod tests;
