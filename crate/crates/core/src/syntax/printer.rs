use std::fmt::Write;

use super::ast::{AstNode, Primitive};

const INDENT: &str = "    ";

/// Renders a document root back to Nanosyntax. Re-parsing the output yields a
/// structurally identical tree.
pub fn print_document(root: &AstNode) -> String {
    let mut out = String::new();
    let statements = if root.is_root() {
        root.children()
    } else {
        std::slice::from_ref(root)
    };
    for statement in statements {
        print_statement(&mut out, statement, 0);
    }
    out
}

fn print_statement(out: &mut String, node: &AstNode, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
    print_value(out, node, depth);
    out.push_str(";\n");
}

fn print_value(out: &mut String, node: &AstNode, depth: usize) {
    match node {
        AstNode::Primitive { value, .. } => out.push_str(&format_primitive(value)),
        AstNode::Reference { identifier, .. } => out.push_str(identifier),
        AstNode::Assignment { .. } if is_expression(node) && node.operator().is_some() => {
            print_expression(out, node, 0, false);
        }
        AstNode::Assignment {
            identifier, values, ..
        } => {
            if let [single] = values.as_slice() {
                let _ = write!(out, "{identifier}: ");
                print_value(out, single, depth);
            } else if values.is_empty() {
                let _ = write!(out, "{identifier} {{ }}");
            } else {
                let _ = writeln!(out, "{identifier} {{");
                for child in values {
                    print_statement(out, child, depth + 1);
                }
                for _ in 0..depth {
                    out.push_str(INDENT);
                }
                out.push('}');
            }
        }
    }
}

/// Whether a subtree can be written in infix form.
fn is_expression(node: &AstNode) -> bool {
    match node {
        AstNode::Primitive { .. } | AstNode::Reference { .. } => true,
        AstNode::Assignment { values, .. } => {
            node.operator().is_some() && values.iter().all(is_expression)
        }
    }
}

fn print_expression(out: &mut String, node: &AstNode, parent_prec: u8, right_operand: bool) {
    let Some(op) = node.operator() else {
        print_value(out, node, 0);
        return;
    };
    let prec = op.precedence();
    let parens = prec < parent_prec || (prec == parent_prec && right_operand);
    if parens {
        out.push('(');
    }
    let values = node.children();
    print_expression(out, &values[0], prec, false);
    let _ = write!(out, " {} ", op.symbol());
    print_expression(out, &values[1], prec, true);
    if parens {
        out.push(')');
    }
}

pub fn format_primitive(value: &Primitive) -> String {
    match value {
        Primitive::Integer(v) => v.to_string(),
        Primitive::Decimal(v) => format_decimal(*v),
        Primitive::Boolean(b) => b.to_string(),
        Primitive::Str(s) => {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    c => out.push(c),
                }
            }
            out.push('"');
            out
        }
    }
}

/// Shortest decimal rendering that still lexes as a decimal literal.
pub fn format_decimal(v: f64) -> String {
    let mut text = v.to_string();
    if !text.contains('.') {
        text.push_str(".0");
    }
    text
}

/// Infix rendering of an expression subtree, used in diagnostics and dumps.
pub fn format_expression(node: &AstNode) -> String {
    let mut out = String::new();
    print_expression(&mut out, node, 0, false);
    out
}
