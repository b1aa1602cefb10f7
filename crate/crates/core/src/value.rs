//! Literal values carried by primitive slots, including time predicates.

use std::fmt;

use serde::Serialize;

use crate::syntax::printer::{format_decimal, format_expression, format_primitive};
use crate::syntax::{AstNode, Operator, Primitive, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimitiveKind {
    Integer,
    Decimal,
    String,
    Boolean,
    Predicate,
}

impl fmt::Display for PrimitiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PrimitiveKind::Integer => "integer",
            PrimitiveKind::Decimal => "decimal",
            PrimitiveKind::String => "string",
            PrimitiveKind::Boolean => "boolean",
            PrimitiveKind::Predicate => "predicate",
        };
        f.write_str(name)
    }
}

/// Lower bound a numeric slot enforces on user values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericRange {
    NonNegative,
    Positive,
}

impl NumericRange {
    pub fn admits(self, v: f64) -> bool {
        match self {
            NumericRange::NonNegative => v >= 0.0,
            NumericRange::Positive => v > 0.0,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            NumericRange::NonNegative => "non-negative",
            NumericRange::Positive => "positive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Integer(i64),
    Decimal(f64),
    Str(String),
    Boolean(bool),
    Predicate(Predicate),
}

impl Literal {
    pub fn kind(&self) -> PrimitiveKind {
        match self {
            Literal::Integer(_) => PrimitiveKind::Integer,
            Literal::Decimal(_) => PrimitiveKind::Decimal,
            Literal::Str(_) => PrimitiveKind::String,
            Literal::Boolean(_) => PrimitiveKind::Boolean,
            Literal::Predicate(_) => PrimitiveKind::Predicate,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Literal::Integer(v) => Some(*v as f64),
            Literal::Decimal(v) => Some(*v),
            _ => None,
        }
    }

    /// Syntax tree that reproduces this literal when parsed.
    pub fn to_ast(&self, span: SourceSpan) -> AstNode {
        match self {
            Literal::Integer(v) => AstNode::primitive(Primitive::Integer(*v), span),
            Literal::Decimal(v) => AstNode::primitive(Primitive::Decimal(*v), span),
            Literal::Str(s) => AstNode::primitive(Primitive::Str(s.clone()), span),
            Literal::Boolean(b) => AstNode::primitive(Primitive::Boolean(*b), span),
            Literal::Predicate(p) => p.to_ast(span),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Integer(v) => write!(f, "{v}"),
            Literal::Decimal(v) => f.write_str(&format_decimal(*v)),
            Literal::Str(s) => f.write_str(&format_primitive(&Primitive::Str(s.clone()))),
            Literal::Boolean(b) => write!(f, "{b}"),
            Literal::Predicate(p) => write!(f, "{p}"),
        }
    }
}

/// The only free variable predicates may mention.
pub const TIME_VARIABLE: &str = "time";

/// Expression over the simulation clock.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Time,
    Number(f64),
    Bool(bool),
    Binary(Operator, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExprType {
    Number,
    Bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ExprValue {
    Number(f64),
    Bool(bool),
}

/// A boolean-valued expression over `time`, such as `time >= 100.0`.
/// `false` is the predicate that never holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate(Expr);

impl Predicate {
    pub fn never() -> Predicate {
        Predicate(Expr::Bool(false))
    }

    pub fn expr(&self) -> &Expr {
        &self.0
    }

    /// Builds a predicate from a primitive or lowered operator tree, checking
    /// that it is boolean-valued.
    pub fn from_ast(node: &AstNode) -> Result<Predicate, (String, SourceSpan)> {
        let expr = expr_from_ast(node)?;
        match type_of(&expr) {
            Ok(ExprType::Bool) => Ok(Predicate(expr)),
            Ok(ExprType::Number) => Err((
                "predicate must be boolean-valued, found a number".to_string(),
                node.span(),
            )),
            Err(message) => Err((message, node.span())),
        }
    }

    pub fn holds_at(&self, time: f64) -> bool {
        match eval(&self.0, time) {
            ExprValue::Bool(b) => b,
            ExprValue::Number(_) => unreachable!("type-checked at construction"),
        }
    }

    pub fn to_ast(&self, span: SourceSpan) -> AstNode {
        expr_to_ast(&self.0, span)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expression(&self.to_ast(SourceSpan::start())))
    }
}

fn expr_from_ast(node: &AstNode) -> Result<Expr, (String, SourceSpan)> {
    match node {
        AstNode::Primitive { value, span } => match value {
            Primitive::Integer(v) => Ok(Expr::Number(*v as f64)),
            Primitive::Decimal(v) => Ok(Expr::Number(*v)),
            Primitive::Boolean(b) => Ok(Expr::Bool(*b)),
            Primitive::Str(_) => Err(("strings cannot appear in predicates".into(), *span)),
        },
        AstNode::Reference { identifier, span } => {
            if identifier == TIME_VARIABLE {
                Ok(Expr::Time)
            } else {
                Err((
                    format!("unknown variable '{identifier}' (only '{TIME_VARIABLE}' is defined)"),
                    *span,
                ))
            }
        }
        AstNode::Assignment {
            identifier,
            values,
            span,
        } => {
            let Some(op) = node.operator() else {
                return Err((format!("'{identifier}' is not an operator expression"), *span));
            };
            Ok(Expr::Binary(
                op,
                Box::new(expr_from_ast(&values[0])?),
                Box::new(expr_from_ast(&values[1])?),
            ))
        }
    }
}

fn expr_to_ast(expr: &Expr, span: SourceSpan) -> AstNode {
    match expr {
        Expr::Time => AstNode::reference(TIME_VARIABLE, span),
        Expr::Number(v) => AstNode::primitive(Primitive::Decimal(*v), span),
        Expr::Bool(b) => AstNode::primitive(Primitive::Boolean(*b), span),
        Expr::Binary(op, l, r) => {
            AstNode::assignment(op.name(), vec![expr_to_ast(l, span), expr_to_ast(r, span)], span)
        }
    }
}

fn type_of(expr: &Expr) -> Result<ExprType, String> {
    match expr {
        Expr::Time | Expr::Number(_) => Ok(ExprType::Number),
        Expr::Bool(_) => Ok(ExprType::Bool),
        Expr::Binary(op, l, r) => {
            let (lt, rt) = (type_of(l)?, type_of(r)?);
            match op {
                Operator::Eq | Operator::Neq if lt == rt => Ok(ExprType::Bool),
                _ if op.is_comparison() && lt == ExprType::Number && rt == ExprType::Number => {
                    Ok(ExprType::Bool)
                }
                _ if !op.is_comparison() && lt == ExprType::Number && rt == ExprType::Number => {
                    Ok(ExprType::Number)
                }
                _ => Err(format!("operands of '{}' have incompatible types", op.symbol())),
            }
        }
    }
}

fn eval(expr: &Expr, time: f64) -> ExprValue {
    match expr {
        Expr::Time => ExprValue::Number(time),
        Expr::Number(v) => ExprValue::Number(*v),
        Expr::Bool(b) => ExprValue::Bool(*b),
        Expr::Binary(op, l, r) => match (eval(l, time), eval(r, time)) {
            (ExprValue::Number(a), ExprValue::Number(b)) => match op {
                Operator::Geq => ExprValue::Bool(a >= b),
                Operator::Leq => ExprValue::Bool(a <= b),
                Operator::Gt => ExprValue::Bool(a > b),
                Operator::Lt => ExprValue::Bool(a < b),
                Operator::Eq => ExprValue::Bool(a == b),
                Operator::Neq => ExprValue::Bool(a != b),
                Operator::Plus => ExprValue::Number(a + b),
                Operator::Minus => ExprValue::Number(a - b),
                Operator::Times => ExprValue::Number(a * b),
                Operator::Divide => ExprValue::Number(a / b),
            },
            (ExprValue::Bool(a), ExprValue::Bool(b)) => match op {
                Operator::Eq => ExprValue::Bool(a == b),
                Operator::Neq => ExprValue::Bool(a != b),
                _ => unreachable!("type-checked at construction"),
            },
            _ => unreachable!("type-checked at construction"),
        },
    }
}
