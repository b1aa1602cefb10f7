//! Parses a model, prints its syntax tree and pretty-prints it back to source.
//!
//! cargo run --example parse_and_print [file.nano]

use nanoccs::syntax::printer::format_primitive;
use nanoccs::syntax::{parse_source, print_document, AstNode};

fn show(node: &AstNode, depth: usize) {
    let label = match node {
        AstNode::Primitive { value, .. } => format_primitive(value),
        other => other.identifier().unwrap_or("?").to_string(),
    };
    println!("{:indent$}{label}", "", indent = depth * 2);
    for child in node.children() {
        show(child, depth + 1);
    }
}

fn main() {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable model"),
        None => include_str!("models/single_agent.nano").to_string(),
    };
    let ast = match parse_source(&source) {
        Ok(ast) => ast,
        Err(e) => {
            eprintln!("syntax error: {e}");
            std::process::exit(1);
        }
    };
    println!("{} nodes", ast.node_count());
    show(&ast, 0);

    let printed = print_document(&ast);
    println!("\n{printed}");
    let reparsed = parse_source(&printed).expect("printed source parses");
    assert!(reparsed.structurally_eq(&ast));
}
