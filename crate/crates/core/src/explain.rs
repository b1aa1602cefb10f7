//! Readable dumps of a solved configuration, and its rendering back into
//! fully explicit source.

use std::fmt;

use serde::Serialize;

use crate::registry::Registry;
use crate::semantics::{ObjectNode, Origin, SlotPath};
use crate::syntax::{print_document, AstNode, SourceSpan};

/// One slot of the solved tree with the value chosen for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplainLine {
    pub path: SlotPath,
    pub origin: Origin,
    pub value: String,
}

impl fmt::Display for ExplainLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {}", self.path, self.origin, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Explanation {
    pub slots: Vec<ExplainLine>,
}

impl Explanation {
    /// The dump without provenance tags.
    pub fn values(&self) -> Vec<(String, String)> {
        self.slots.iter().map(|l| (l.path.to_string(), l.value.clone())).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("explanation serializes")
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.slots {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Every slot of the solved tree in solve order, depth first.
pub fn explain(solved: &ObjectNode, registry: &Registry) -> Explanation {
    let mut slots = Vec::new();
    let root = SlotPath::root(&registry.class(registry.root()).name);
    collect(solved, &root, registry, &mut slots);
    Explanation { slots }
}

fn collect(node: &ObjectNode, path: &SlotPath, registry: &Registry, out: &mut Vec<ExplainLine>) {
    match node {
        ObjectNode::Map(map) => {
            for (name, child) in &map.slots {
                let child_path = path.child(name);
                out.push(ExplainLine {
                    path: child_path.clone(),
                    origin: child.origin(),
                    value: summarize(child, registry),
                });
                collect(child, &child_path, registry, out);
            }
        }
        ObjectNode::List(list) => {
            for (i, item) in list.items.iter().enumerate() {
                let item_path = path.child(i);
                out.push(ExplainLine {
                    path: item_path.clone(),
                    origin: item.origin(),
                    value: summarize(item, registry),
                });
                collect(item, &item_path, registry, out);
            }
        }
        ObjectNode::Primitive(_) => {}
    }
}

/// `RectangularLattice 32 32` for a component with primitive slots,
/// `list(1)` for lists, the literal itself for primitives.
fn summarize(node: &ObjectNode, registry: &Registry) -> String {
    match node {
        ObjectNode::Map(map) => {
            let mut parts = vec![registry.class(map.class).name.clone()];
            parts.extend(map.slots.iter().filter_map(|(_, v)| v.as_literal()).map(ToString::to_string));
            parts.join(" ")
        }
        ObjectNode::List(list) => format!("list({})", list.items.len()),
        ObjectNode::Primitive(p) => p.value.to_string(),
    }
}

/// Renders the solved tree as source in which every slot is given
/// explicitly.
pub fn synthesize_source(solved: &ObjectNode, registry: &Registry) -> String {
    print_document(&synthesize_ast(solved, registry))
}

pub fn synthesize_ast(solved: &ObjectNode, registry: &Registry) -> AstNode {
    let values = solved.as_map().map(|m| slot_assignments(m, registry)).unwrap_or_default();
    AstNode::root(values)
}

fn slot_assignments(map: &crate::semantics::MapNode, registry: &Registry) -> Vec<AstNode> {
    let at = SourceSpan::start();
    map.slots
        .iter()
        .map(|(name, value)| {
            let values = match value {
                ObjectNode::List(list) => list.items.iter().map(|i| component(i, registry)).collect(),
                other => vec![component(other, registry)],
            };
            AstNode::assignment(name.clone(), values, at)
        })
        .collect()
}

fn component(node: &ObjectNode, registry: &Registry) -> AstNode {
    let at = SourceSpan::start();
    match node {
        ObjectNode::Map(map) => {
            let class = registry.class(map.class);
            let keyword = class.keyword.clone().unwrap_or_else(|| class.name.clone());
            if map.slots.is_empty() {
                AstNode::reference(keyword, at)
            } else {
                AstNode::assignment(keyword, slot_assignments(map, registry), at)
            }
        }
        ObjectNode::Primitive(p) => p.value.to_ast(at),
        ObjectNode::List(list) => {
            // Lists only occur directly under a slot.
            AstNode::assignment("list", list.items.iter().map(|i| component(i, registry)).collect(), at)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Compiler;

    const LISTING: &str = include_str!("../examples/models/single_agent.nano");

    fn dump(compiler: &Compiler, src: &str) -> Explanation {
        explain(&compiler.compile(src).unwrap().solved, compiler.registry())
    }

    fn line<'e>(e: &'e Explanation, path: &str) -> &'e ExplainLine {
        e.slots.iter().find(|l| l.path.to_string() == path).unwrap()
    }

    #[test]
    fn listing_geometry_is_the_first_default() {
        let c = Compiler::seeded();
        let e = dump(&c, LISTING);
        assert_eq!(line(&e, "Project/geometry").to_string(), "Project/geometry: default[0] RectangularLattice 32 32");
        assert_eq!(line(&e, "Project/boundary").to_string(), "Project/boundary: default[0] Absorbing");
        assert_eq!(line(&e, "Project/initially").origin, Origin::User);
        assert_eq!(
            line(&e, "Project/initially/0/description/do/0/until").to_string(),
            "Project/initially/0/description/do/0/until: user time >= 100.0"
        );
    }

    #[test]
    fn user_boundary_is_tagged_user() {
        let c = Compiler::seeded();
        let e = dump(&c, &format!("{LISTING}\nboundary: periodic;"));
        assert_eq!(line(&e, "Project/boundary").to_string(), "Project/boundary: user Periodic");
    }

    #[test]
    fn synthesized_source_resolves_to_the_same_configuration() {
        let c = Compiler::seeded();
        for src in [LISTING, "", "arena: hexagonal;", include_str!("../examples/models/crowded_collisions.nano")] {
            let first = dump(&c, src);
            let solved = c.compile(src).unwrap().solved;
            let explicit = synthesize_source(&solved, c.registry());
            let second = dump(&c, &explicit);
            assert_eq!(first.values(), second.values(), "{explicit}");
            assert!(second.slots.iter().all(|l| l.origin == Origin::User), "{explicit}");
            let again = synthesize_source(&c.compile(&explicit).unwrap().solved, c.registry());
            assert_eq!(dump(&c, &again), second);
            assert_eq!(again, explicit);
        }
    }

    #[test]
    fn json_lists_every_slot() {
        let c = Compiler::seeded();
        let e = dump(&c, "");
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["slots"][0]["path"], "Project/geometry");
        assert_eq!(v["slots"][0]["origin"], "default[0]");
        assert_eq!(v["slots"].as_array().unwrap().len(), e.slots.len());
    }
}
