//! Heterogeneous syntax tree.
//!
//! Every node is one of three variants: a primitive literal, a reference to an
//! identifier, or an assignment of an ordered list of values to an identifier.
//! Infix expressions are lowered into assignments named after their operator,
//! so no other node kinds survive parsing.

use std::fmt;

use serde::Serialize;

/// Identifier of the hidden assignment that holds a whole document.
pub const ROOT_IDENTIFIER: &str = "__root__";

/// Location of a token or node in the original source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            line,
            column,
            length,
        }
    }

    /// Span used for the hidden root, which has no text of its own.
    pub fn start() -> Self {
        SourceSpan::new(1, 1, 0)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    Integer(i64),
    Decimal(f64),
    Str(String),
    Boolean(bool),
}

impl Primitive {
    /// Bitwise comparison so that decimals compare reflexively.
    pub fn same_as(&self, other: &Primitive) -> bool {
        match (self, other) {
            (Primitive::Decimal(a), Primitive::Decimal(b)) => a.to_bits() == b.to_bits(),
            _ => self == other,
        }
    }
}

/// Binary operators of the expression sub-language, named by their lowered
/// assignment identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Geq,
    Leq,
    Gt,
    Lt,
    Eq,
    Neq,
    Plus,
    Minus,
    Times,
    Divide,
}

impl Operator {
    pub const ALL: [Operator; 10] = [
        Operator::Geq,
        Operator::Leq,
        Operator::Gt,
        Operator::Lt,
        Operator::Eq,
        Operator::Neq,
        Operator::Plus,
        Operator::Minus,
        Operator::Times,
        Operator::Divide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Geq => "geq",
            Operator::Leq => "leq",
            Operator::Gt => "gt",
            Operator::Lt => "lt",
            Operator::Eq => "eq",
            Operator::Neq => "neq",
            Operator::Plus => "plus",
            Operator::Minus => "minus",
            Operator::Times => "times",
            Operator::Divide => "divide",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Operator::Geq => ">=",
            Operator::Leq => "<=",
            Operator::Gt => ">",
            Operator::Lt => "<",
            Operator::Eq => "==",
            Operator::Neq => "!=",
            Operator::Plus => "+",
            Operator::Minus => "-",
            Operator::Times => "*",
            Operator::Divide => "/",
        }
    }

    pub fn from_name(name: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|op| op.name() == name)
    }

    /// Binding strength; larger binds tighter. All levels are left-associative.
    pub fn precedence(self) -> u8 {
        match self {
            Operator::Geq
            | Operator::Leq
            | Operator::Gt
            | Operator::Lt
            | Operator::Eq
            | Operator::Neq => 1,
            Operator::Plus | Operator::Minus => 2,
            Operator::Times | Operator::Divide => 3,
        }
    }

    pub fn is_comparison(self) -> bool {
        self.precedence() == 1
    }
}

#[derive(Debug, Clone)]
pub enum AstNode {
    Primitive {
        value: Primitive,
        span: SourceSpan,
    },
    Reference {
        identifier: String,
        span: SourceSpan,
    },
    Assignment {
        identifier: String,
        values: Vec<AstNode>,
        span: SourceSpan,
    },
}

impl AstNode {
    pub fn span(&self) -> SourceSpan {
        match self {
            AstNode::Primitive { span, .. }
            | AstNode::Reference { span, .. }
            | AstNode::Assignment { span, .. } => *span,
        }
    }

    /// The identifier of a reference or assignment.
    pub fn identifier(&self) -> Option<&str> {
        match self {
            AstNode::Primitive { .. } => None,
            AstNode::Reference { identifier, .. } | AstNode::Assignment { identifier, .. } => {
                Some(identifier)
            }
        }
    }

    pub fn children(&self) -> &[AstNode] {
        match self {
            AstNode::Assignment { values, .. } => values,
            _ => &[],
        }
    }

    pub fn root(values: Vec<AstNode>) -> AstNode {
        AstNode::Assignment {
            identifier: ROOT_IDENTIFIER.to_string(),
            values,
            span: SourceSpan::start(),
        }
    }

    pub fn is_root(&self) -> bool {
        matches!(self, AstNode::Assignment { identifier, .. } if identifier == ROOT_IDENTIFIER)
    }

    /// The lowered operator this node stands for, if it is a binary operator
    /// assignment.
    pub fn operator(&self) -> Option<Operator> {
        match self {
            AstNode::Assignment {
                identifier, values, ..
            } if values.len() == 2 => Operator::from_name(identifier),
            _ => None,
        }
    }

    /// Equality that ignores source spans.
    pub fn structurally_eq(&self, other: &AstNode) -> bool {
        match (self, other) {
            (AstNode::Primitive { value: a, .. }, AstNode::Primitive { value: b, .. }) => {
                a.same_as(b)
            }
            (
                AstNode::Reference { identifier: a, .. },
                AstNode::Reference { identifier: b, .. },
            ) => a == b,
            (
                AstNode::Assignment {
                    identifier: a,
                    values: va,
                    ..
                },
                AstNode::Assignment {
                    identifier: b,
                    values: vb,
                    ..
                },
            ) => {
                a == b
                    && va.len() == vb.len()
                    && va.iter().zip(vb).all(|(x, y)| x.structurally_eq(y))
            }
            _ => false,
        }
    }

    /// Number of nodes in this subtree, including this one.
    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(AstNode::node_count).sum::<usize>()
    }

    pub fn primitive(value: Primitive, span: SourceSpan) -> AstNode {
        AstNode::Primitive { value, span }
    }

    pub fn reference(identifier: impl Into<String>, span: SourceSpan) -> AstNode {
        AstNode::Reference {
            identifier: identifier.into(),
            span,
        }
    }

    pub fn assignment(identifier: impl Into<String>, values: Vec<AstNode>, span: SourceSpan) -> AstNode {
        AstNode::Assignment {
            identifier: identifier.into(),
            values,
            span,
        }
    }
}
