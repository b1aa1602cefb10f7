//! Shows which defaults the solver picked for a model, then renders the
//! solved configuration as fully explicit source.

use nanoccs::explain::{explain, synthesize_source};
use nanoccs::pipeline::Compiler;

fn main() {
    let compiler = Compiler::seeded();
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable model"),
        None => include_str!("models/hexagonal_arena.nano").to_string(),
    };
    let compiled = match compiler.compile(&source) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    };
    println!(
        "solver: {} bindings tried, {} complete assignments",
        compiled.stats.bindings_tried, compiled.stats.complete_assignments
    );
    print!("{}", explain(&compiled.solved, compiler.registry()));

    let explicit = synthesize_source(&compiled.solved, compiler.registry());
    println!("\n{explicit}");
    let again = compiler.compile(&explicit).expect("explicit source compiles");
    assert_eq!(
        explain(&again.solved, compiler.registry()).values(),
        explain(&compiled.solved, compiler.registry()).values()
    );
}
