//! Translates sources into component hierarchies and reports missing or
//! duplicated slots before any defaults are filled in.

use nanoccs::pipeline::{CompileError, Compiler};

const SOURCES: &[(&str, &str)] = &[
    ("listing", include_str!("models/single_agent.nano")),
    ("duplicate boundary", "boundary: absorbing;\nboundary: periodic;"),
    ("duplicate width", "geometry: rectangular { width: 10; width: 12; };"),
    ("unknown slot", "colour: red;"),
    ("width out of range", "geometry: rectangular { width: 0; };"),
];

fn main() {
    let compiler = Compiler::seeded();
    for (name, source) in SOURCES {
        match compiler.check(source) {
            Ok((_, translated)) => println!("{name}: ok, {} user slots", user_slots(&translated)),
            Err(CompileError::Determination(diagnostics)) => {
                println!("{name}: {} diagnostic(s)", diagnostics.len());
                for d in diagnostics {
                    println!("  {:?} {d}", d.kind);
                }
            }
            Err(e) => println!("{name}: exit {}: {e}", e.exit_code()),
        }
    }
}

fn user_slots(node: &nanoccs::semantics::ObjectNode) -> usize {
    use nanoccs::semantics::ObjectNode;
    match node {
        ObjectNode::Map(m) => m.slots.iter().map(|(_, v)| 1 + user_slots(v)).sum(),
        ObjectNode::List(l) => l.items.iter().map(user_slots).sum(),
        ObjectNode::Primitive(_) => 0,
    }
}
