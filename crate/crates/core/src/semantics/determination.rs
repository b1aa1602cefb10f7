//! Over- and underdetermination checks on a translated build hierarchy.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::object::{ObjectNode, SlotPath};
use crate::registry::Registry;
use crate::syntax::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagnosticKind {
    /// A required slot has no value and no default.
    Underdetermined,
    /// The same slot was given more than once.
    Overdetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub path: SlotPath,
    pub message: String,
    pub line: u32,
    pub column: u32,
}

impl Diagnostic {
    pub fn span(&self) -> SourceSpan {
        SourceSpan::new(self.line, self.column, 0)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({}:{})", self.path, self.message, self.line, self.column)
    }
}

/// Lists every missing required slot and every duplicated slot. An empty
/// result means the hierarchy is ready for interpolation.
pub fn check_determination(root: &ObjectNode, registry: &Registry) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    let path = SlotPath::root(&registry.class(registry.root()).name);
    walk(root, &path, registry, &mut diagnostics);
    diagnostics
}

fn walk(node: &ObjectNode, path: &SlotPath, registry: &Registry, out: &mut Vec<Diagnostic>) {
    let span = node.span().unwrap_or_else(SourceSpan::start);
    match node {
        ObjectNode::Map(map) => {
            let class = registry.class(map.class);
            let mut seen = HashSet::new();
            for (name, child) in &map.slots {
                let child_path = path.child(name);
                if !seen.insert(name.as_str()) {
                    let at = child.span().unwrap_or(span);
                    out.push(Diagnostic {
                        kind: DiagnosticKind::Overdetermined,
                        path: child_path.clone(),
                        message: format!("'{name}' is specified more than once"),
                        line: at.line,
                        column: at.column,
                    });
                }
                walk(child, &child_path, registry, out);
            }
            for slot in class.slots.iter().filter(|s| s.required) {
                if map.slot(&slot.name).is_none() {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::Underdetermined,
                        path: path.child(&slot.name),
                        message: format!(
                            "required slot '{}' of {} is missing and has no default",
                            slot.name, class.name
                        ),
                        line: span.line,
                        column: span.column,
                    });
                }
            }
        }
        ObjectNode::List(list) => {
            for (i, item) in list.items.iter().enumerate() {
                walk(item, &path.child(i), registry, out);
            }
        }
        ObjectNode::Primitive(_) => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::seed_registry;
    use crate::semantics::{translate, SymbolTables};
    use crate::syntax::parse_source;

    const LISTING: &str = include_str!("../../examples/models/single_agent.nano");

    fn diagnose(src: &str) -> Vec<Diagnostic> {
        let registry = seed_registry().unwrap();
        let tables = SymbolTables::build(&registry);
        let root = translate(&parse_source(src).unwrap(), &registry, &tables).unwrap();
        check_determination(&root, &registry)
    }

    /// Independent scan: every map node in the tree must carry every
    /// required slot of its class.
    fn missing_required(node: &ObjectNode, path: String, registry: &Registry, out: &mut Vec<String>) {
        match node {
            ObjectNode::Map(map) => {
                for slot in &registry.class(map.class).slots {
                    if slot.required && !map.slots.iter().any(|(n, _)| *n == slot.name) {
                        out.push(format!("{path}/{}", slot.name));
                    }
                }
                for (n, child) in &map.slots {
                    missing_required(child, format!("{path}/{n}"), registry, out);
                }
            }
            ObjectNode::List(list) => {
                for (i, child) in list.items.iter().enumerate() {
                    missing_required(child, format!("{path}/{i}"), registry, out);
                }
            }
            ObjectNode::Primitive(_) => {}
        }
    }

    #[test]
    fn listing_is_fully_determined() {
        assert!(diagnose(LISTING).is_empty());
    }

    #[test]
    fn missing_action_is_underdetermined() {
        let src = LISTING.replace("action: wander;", "");
        let diagnostics = diagnose(&src);

        let registry = seed_registry().unwrap();
        let tables = SymbolTables::build(&registry);
        let root = translate(&parse_source(&src).unwrap(), &registry, &tables).unwrap();
        let mut oracle = Vec::new();
        missing_required(&root, "Project".into(), &registry, &mut oracle);

        assert_eq!(oracle, vec!["Project/initially/0/description/do/0/action"]);
        assert_eq!(diagnostics.len(), 1);
        assert_eq!(diagnostics[0].kind, DiagnosticKind::Underdetermined);
        assert_eq!(diagnostics[0].path.to_string(), oracle[0]);
        // Reported at the Behavior block that lacks the slot.
        assert_eq!((diagnostics[0].line, diagnostics[0].column), (6, 21));
    }

    #[test]
    fn duplicate_geometry_is_overdetermined() {
        let diagnostics = diagnose("geometry: rectangular;\ngeometry: triangular;");
        assert_eq!(diagnostics.len(), 1);
        assert_eq!(diagnostics[0].kind, DiagnosticKind::Overdetermined);
        assert_eq!(diagnostics[0].path.to_string(), "Project/geometry");
        assert_eq!(diagnostics[0].line, 2);
    }

    #[test]
    fn missing_description_is_reported_at_scatter() {
        let diagnostics = diagnose("initially: scatter: count: 3;");
        assert_eq!(diagnostics.len(), 1);
        assert_eq!(diagnostics[0].path.to_string(), "Project/initially/0/description");
        assert_eq!(diagnostics[0].to_string(),
            "Project/initially/0/description: required slot 'description' of Scatter is missing and has no default (1:12)");
    }
}
