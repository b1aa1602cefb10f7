//! Reads a solved build hierarchy into a runtime model description.

use std::collections::VecDeque;

use thiserror::Error;

use super::agent::{Action, AgentDescriptor, BehaviorSpec, CollisionRule, Destination};
use super::layer::{ArenaShape, BoundaryRule, LatticeKind, LayerSpec};
use crate::registry::seed::names;
use crate::registry::Registry;
use crate::semantics::{ObjectNode, SlotPath};
use crate::value::{Literal, Predicate};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstantiateError {
    #[error("{0}: slot is unbound after interpolation")]
    Unbound(SlotPath),
    #[error("{path}: the runtime has no implementation of {class}")]
    Unsupported { path: SlotPath, class: String },
    #[error("{path}: {message}")]
    Invalid { path: SlotPath, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SetupAction {
    Scatter {
        count: usize,
        descriptor: AgentDescriptor,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    ImageSequence,
}

/// Everything the runtime needs from a solved model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub layer: LayerSpec,
    pub setup: Vec<SetupAction>,
    pub outputs: Vec<OutputKind>,
    pub terminate: Predicate,
}

impl ModelConfig {
    pub fn from_tree(tree: &ObjectNode, registry: &Registry) -> Result<ModelConfig, InstantiateError> {
        let root = SlotPath::root(&registry.class(registry.root()).name);
        audit_complete(tree, &root, registry)?;
        Reader { registry }.project(tree, &root)
    }
}

/// Breadth-first walk confirming every slot of every component is bound.
fn audit_complete(tree: &ObjectNode, root: &SlotPath, registry: &Registry) -> Result<(), InstantiateError> {
    let mut queue = VecDeque::from([(root.clone(), tree)]);
    while let Some((path, node)) = queue.pop_front() {
        match node {
            ObjectNode::Map(map) => {
                for spec in &registry.class(map.class).slots {
                    let child_path = path.child(&spec.name);
                    match map.slot(&spec.name) {
                        Some(child) => queue.push_back((child_path, child)),
                        None => return Err(InstantiateError::Unbound(child_path)),
                    }
                }
            }
            ObjectNode::List(list) => {
                queue.extend(list.items.iter().enumerate().map(|(i, item)| (path.child(i), item)));
            }
            ObjectNode::Primitive(_) => {}
        }
    }
    Ok(())
}

struct Reader<'r> {
    registry: &'r Registry,
}

impl Reader<'_> {
    fn slot<'t>(&self, node: &'t ObjectNode, path: &SlotPath, name: &str) -> Result<&'t ObjectNode, InstantiateError> {
        node.as_map()
            .and_then(|m| m.slot(name))
            .ok_or_else(|| InstantiateError::Unbound(path.child(name)))
    }

    fn class_name(&self, node: &ObjectNode, path: &SlotPath) -> Result<&str, InstantiateError> {
        let class = node.class().ok_or_else(|| InstantiateError::Invalid {
            path: path.clone(),
            message: "expected a component".into(),
        })?;
        Ok(&self.registry.class(class).name)
    }

    fn unsupported(&self, path: &SlotPath, class: &str) -> InstantiateError {
        InstantiateError::Unsupported {
            path: path.clone(),
            class: class.to_string(),
        }
    }

    fn literal<'t>(&self, node: &'t ObjectNode, path: &SlotPath, name: &str) -> Result<&'t Literal, InstantiateError> {
        self.slot(node, path, name)?
            .as_literal()
            .ok_or_else(|| InstantiateError::Invalid {
                path: path.child(name),
                message: "expected a value".into(),
            })
    }

    fn count(&self, node: &ObjectNode, path: &SlotPath, name: &str) -> Result<usize, InstantiateError> {
        match self.literal(node, path, name)? {
            Literal::Integer(n) if *n >= 0 => Ok(*n as usize),
            other => Err(InstantiateError::Invalid {
                path: path.child(name),
                message: format!("expected a non-negative integer, got {other}"),
            }),
        }
    }

    fn decimal(&self, node: &ObjectNode, path: &SlotPath, name: &str) -> Result<f64, InstantiateError> {
        let lit = self.literal(node, path, name)?;
        match lit {
            Literal::Integer(_) | Literal::Decimal(_) => Ok(lit.as_f64().unwrap_or_default()),
            other => Err(InstantiateError::Invalid {
                path: path.child(name),
                message: format!("expected a number, got {other}"),
            }),
        }
    }

    fn predicate(&self, node: &ObjectNode, path: &SlotPath, name: &str) -> Result<Predicate, InstantiateError> {
        match self.literal(node, path, name)? {
            Literal::Predicate(p) => Ok(p.clone()),
            Literal::Boolean(false) => Ok(Predicate::never()),
            other => Err(InstantiateError::Invalid {
                path: path.child(name),
                message: format!("expected a condition, got {other}"),
            }),
        }
    }

    fn items<'t>(&self, node: &'t ObjectNode, path: &SlotPath, name: &str) -> Result<&'t [ObjectNode], InstantiateError> {
        self.slot(node, path, name)?
            .as_list()
            .map(|l| l.items.as_slice())
            .ok_or_else(|| InstantiateError::Invalid {
                path: path.child(name),
                message: "expected a list".into(),
            })
    }

    fn project(&self, tree: &ObjectNode, path: &SlotPath) -> Result<ModelConfig, InstantiateError> {
        let geometry_path = path.child("geometry");
        let geometry = self.slot(tree, path, "geometry")?;
        let lattice = match self.class_name(geometry, &geometry_path)? {
            names::RECTANGULAR_LATTICE => LatticeKind::Rectangular,
            names::TRIANGULAR_LATTICE => LatticeKind::Triangular,
            names::HEXAGONAL_LATTICE => LatticeKind::Hexagonal,
            other => return Err(self.unsupported(&geometry_path, other)),
        };
        let width = self.count(geometry, &geometry_path, "width")?;
        let height = self.count(geometry, &geometry_path, "height")?;

        let boundary_path = path.child("boundary");
        let boundary = match self.class_name(self.slot(tree, path, "boundary")?, &boundary_path)? {
            names::ABSORBING => BoundaryRule::Absorbing,
            names::PERIODIC => BoundaryRule::Periodic,
            other => return Err(self.unsupported(&boundary_path, other)),
        };
        let arena_path = path.child("arena");
        let arena = match self.class_name(self.slot(tree, path, "arena")?, &arena_path)? {
            names::RECTANGULAR_ARENA => ArenaShape::Rectangular,
            names::HEXAGONAL_ARENA => ArenaShape::Hexagonal,
            other => return Err(self.unsupported(&arena_path, other)),
        };

        let setup_path = path.child("initially");
        let setup = self
            .items(tree, path, "initially")?
            .iter()
            .enumerate()
            .map(|(i, item)| self.setup(item, &setup_path.child(i)))
            .collect::<Result<_, _>>()?;

        let output_path = path.child("output");
        let outputs = self
            .items(tree, path, "output")?
            .iter()
            .enumerate()
            .map(|(i, item)| match self.class_name(item, &output_path.child(i))? {
                names::IMAGE_SEQUENCE => Ok(OutputKind::ImageSequence),
                other => Err(self.unsupported(&output_path.child(i), other)),
            })
            .collect::<Result<_, _>>()?;

        Ok(ModelConfig {
            layer: LayerSpec {
                lattice,
                width,
                height,
                arena,
                boundary,
            },
            setup,
            outputs,
            terminate: self.predicate(tree, path, "terminate")?,
        })
    }

    fn setup(&self, node: &ObjectNode, path: &SlotPath) -> Result<SetupAction, InstantiateError> {
        match self.class_name(node, path)? {
            names::SCATTER => {
                let count = self.count(node, path, "count")?;
                let descriptor_path = path.child("description");
                let descriptor = self.slot(node, path, "description")?;
                let do_path = descriptor_path.child("do");
                let behaviors = self
                    .items(descriptor, &descriptor_path, "do")?
                    .iter()
                    .enumerate()
                    .map(|(i, b)| self.behavior(b, &do_path.child(i)))
                    .collect::<Result<_, _>>()?;
                Ok(SetupAction::Scatter {
                    count,
                    descriptor: AgentDescriptor { behaviors },
                })
            }
            other => Err(self.unsupported(path, other)),
        }
    }

    fn behavior(&self, node: &ObjectNode, path: &SlotPath) -> Result<BehaviorSpec, InstantiateError> {
        let action_path = path.child("action");
        let action = self.slot(node, path, "action")?;
        let action = match self.class_name(action, &action_path)? {
            names::WANDER => {
                let dest_path = action_path.child("destination");
                let destination = match self.class_name(self.slot(action, &action_path, "destination")?, &dest_path)? {
                    names::VACANT_NEIGHBORS => Destination::VacantNeighbors,
                    names::ALL_NEIGHBORS => Destination::AllNeighbors,
                    other => return Err(self.unsupported(&dest_path, other)),
                };
                let coll_path = action_path.child("collision");
                let collision = match self.class_name(self.slot(action, &action_path, "collision")?, &coll_path)? {
                    names::IGNORE_OCCUPIED => CollisionRule::IgnoreOccupied,
                    names::ERROR_ON_COLLISION => CollisionRule::ErrorOnCollision,
                    other => return Err(self.unsupported(&coll_path, other)),
                };
                Action::Wander {
                    destination,
                    collision,
                }
            }
            other => return Err(self.unsupported(&action_path, other)),
        };
        Ok(BehaviorSpec {
            action,
            every: self.decimal(node, path, "every")?,
            until: self.predicate(node, path, "until")?,
        })
    }
}
