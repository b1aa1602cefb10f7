//! Lists the built-in component library: classes, slots, ordered defaults
//! and compatibility constraints. Pass `--json` for machine-readable output.

use nanoccs::registry::seed_registry;

fn main() {
    let dump = seed_registry().expect("built-in library passes the audit").dump();
    if std::env::args().any(|a| a == "--json") {
        println!("{}", serde_json::to_string_pretty(&dump).unwrap());
    } else {
        print!("{dump}");
    }
}
