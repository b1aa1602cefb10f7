//! Compatibility constraints at work: incompatible user choices are
//! rejected with the violated constraint named, and interpolated slots
//! steer around them.

use nanoccs::pipeline::{CompileError, Compiler};

const CASES: &[&str] = &[
    "arena: hexagonal; boundary: periodic;",
    "arena: hexagonal; boundary: absorbing;",
    "geometry: rectangular; arena: hexagonal;",
    "geometry: triangular; arena: hexagonal;",
    "arena: hexagonal;",
];

fn main() {
    let compiler = Compiler::seeded();
    for source in CASES {
        match compiler.compile(source) {
            Ok(c) => {
                let geometry = c.solved.get("geometry").expect("geometry is always solved");
                let class = &compiler.registry().class(geometry.class().unwrap()).name;
                println!("exit 0  {source}  (geometry: {} {class})", geometry.origin());
            }
            Err(CompileError::Unsolvable(failure)) => {
                println!("exit 3  {source}\n        {failure}");
                println!("        {}", serde_json::to_string(&failure.to_json()).unwrap());
            }
            Err(e) => println!("exit {}  {source}: {e}", e.exit_code()),
        }
    }
}
