//! AST → build hierarchy translation.
//!
//! The translator alternates between the two table kinds: an instantiable
//! table dictates how a node's children are read, and each child identifier
//! is narrowed by a resolving table to the next instantiable table. The walk
//! is depth-first and stops at the first error.

use thiserror::Error;

use super::object::{ListNode, MapNode, ObjectNode, Origin, PrimitiveNode};
use super::tables::{InstantiableTable, IstId, ResolvingTable, SlotTable, SymbolTables};
use crate::registry::Registry;
use crate::syntax::{AstNode, Primitive, SourceSpan};
use crate::value::{Literal, Predicate, PrimitiveKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemanticError {
    #[error("{span}: unknown identifier '{identifier}' in {context}")]
    UnknownIdentifier {
        identifier: String,
        context: String,
        span: SourceSpan,
    },
    #[error("{span}: {message}")]
    KindMismatch { message: String, span: SourceSpan },
    #[error("{span}: {message}")]
    InvalidValue { message: String, span: SourceSpan },
}

impl SemanticError {
    pub fn span(&self) -> SourceSpan {
        match self {
            SemanticError::UnknownIdentifier { span, .. }
            | SemanticError::KindMismatch { span, .. }
            | SemanticError::InvalidValue { span, .. } => *span,
        }
    }
}

fn mismatch(message: impl Into<String>, span: SourceSpan) -> SemanticError {
    SemanticError::KindMismatch {
        message: message.into(),
        span,
    }
}

pub struct Translator<'a> {
    registry: &'a Registry,
    tables: &'a SymbolTables,
}

/// Translates a parsed document against the root table.
pub fn translate(
    ast_root: &AstNode,
    registry: &Registry,
    tables: &SymbolTables,
) -> Result<ObjectNode, SemanticError> {
    Translator::new(registry, tables).translate(ast_root, tables.root())
}

impl<'a> Translator<'a> {
    pub fn new(registry: &'a Registry, tables: &'a SymbolTables) -> Self {
        Translator { registry, tables }
    }

    pub fn translate(&self, node: &AstNode, ist: IstId) -> Result<ObjectNode, SemanticError> {
        match self.tables.ist(ist) {
            InstantiableTable::Map { class, slots } => {
                let mut named = Vec::with_capacity(node.children().len());
                for child in node.children() {
                    let (identifier, span) = match child {
                        AstNode::Assignment {
                            identifier, span, ..
                        } => (identifier, *span),
                        AstNode::Reference { identifier, span } => {
                            return Err(if slots.contains_key(identifier) {
                                mismatch(format!("slot '{identifier}' needs a value"), *span)
                            } else {
                                self.unknown(identifier, self.map_context(*class), *span)
                            });
                        }
                        AstNode::Primitive { span, .. } => {
                            return Err(mismatch(
                                format!(
                                    "a literal cannot stand alone inside '{}'",
                                    self.registry.class(*class).name
                                ),
                                *span,
                            ))
                        }
                    };
                    let Some(entry) = slots.get(identifier) else {
                        return Err(self.unknown(identifier, self.map_context(*class), span));
                    };
                    let value = match entry.table {
                        SlotTable::List(list) => self.translate(child, list)?,
                        SlotTable::Resolve(rst) => {
                            let value = single_value(child)?;
                            let resolved = self.resolve(self.tables.rst(rst), value)?;
                            self.translate(value, resolved)?
                        }
                        SlotTable::Primitive(prim) => self.translate(single_value(child)?, prim)?,
                    };
                    named.push((identifier.clone(), value));
                }
                Ok(ObjectNode::Map(MapNode {
                    class: *class,
                    slots: named,
                    span: Some(node.span()),
                    origin: Origin::User,
                }))
            }
            InstantiableTable::List {
                member_class,
                member,
            } => {
                let rst = self.tables.rst(*member);
                let items = node
                    .children()
                    .iter()
                    .map(|child| {
                        let resolved = self.resolve(rst, child)?;
                        self.translate(child, resolved)
                    })
                    .collect::<Result<_, _>>()?;
                Ok(ObjectNode::List(ListNode {
                    member_class: *member_class,
                    items,
                    span: Some(node.span()),
                    origin: Origin::User,
                }))
            }
            InstantiableTable::Primitive { kind, range } => {
                let value = instantiate_primitive(*kind, node)?;
                if let (Some(range), Some(v)) = (range, value.as_f64()) {
                    if !range.admits(v) {
                        return Err(SemanticError::InvalidValue {
                            message: format!("{value} is not {}", range.describe()),
                            span: node.span(),
                        });
                    }
                }
                Ok(ObjectNode::Primitive(PrimitiveNode {
                    value,
                    span: Some(node.span()),
                    origin: Origin::User,
                }))
            }
        }
    }

    /// Narrows a reference or assignment to the table of the class its
    /// identifier names.
    pub fn resolve(&self, rst: &ResolvingTable, node: &AstNode) -> Result<IstId, SemanticError> {
        let expected = &self.registry.class(rst.expected).name;
        let Some(identifier) = node.identifier() else {
            return Err(mismatch(
                format!("expected a {expected} but found a literal"),
                node.span(),
            ));
        };
        rst.members.get(identifier).copied().ok_or_else(|| {
            let known: Vec<_> = rst.members.keys().map(String::as_str).collect();
            self.unknown(
                identifier,
                format!("{expected} (expected one of: {})", known.join(", ")),
                node.span(),
            )
        })
    }

    fn map_context(&self, class: crate::registry::ClassId) -> String {
        let class = self.registry.class(class);
        let slots: Vec<_> = class.slots.iter().map(|s| s.name.as_str()).collect();
        format!("{} (slots: {})", class.name, slots.join(", "))
    }

    fn unknown(&self, identifier: &str, context: String, span: SourceSpan) -> SemanticError {
        SemanticError::UnknownIdentifier {
            identifier: identifier.to_string(),
            context,
            span,
        }
    }
}

fn single_value(slot: &AstNode) -> Result<&AstNode, SemanticError> {
    match slot.children() {
        [value] => Ok(value),
        values => Err(mismatch(
            format!(
                "slot '{}' takes exactly one value, found {}",
                slot.identifier().unwrap_or_default(),
                values.len()
            ),
            slot.span(),
        )),
    }
}

fn instantiate_primitive(kind: PrimitiveKind, node: &AstNode) -> Result<Literal, SemanticError> {
    let span = node.span();
    if kind == PrimitiveKind::Predicate {
        return Predicate::from_ast(node)
            .map(Literal::Predicate)
            .map_err(|(message, span)| mismatch(message, span));
    }
    let AstNode::Primitive { value, .. } = node else {
        return Err(mismatch(format!("expected a {kind} literal"), span));
    };
    match (kind, value) {
        (PrimitiveKind::Integer, Primitive::Integer(v)) => Ok(Literal::Integer(*v)),
        (PrimitiveKind::Decimal, Primitive::Decimal(v)) => Ok(Literal::Decimal(*v)),
        // Integers widen to decimals.
        (PrimitiveKind::Decimal, Primitive::Integer(v)) => Ok(Literal::Decimal(*v as f64)),
        (PrimitiveKind::String, Primitive::Str(s)) => Ok(Literal::Str(s.clone())),
        (PrimitiveKind::Boolean, Primitive::Boolean(b)) => Ok(Literal::Boolean(*b)),
        _ => Err(mismatch(format!("expected a {kind} literal"), span)),
    }
}
