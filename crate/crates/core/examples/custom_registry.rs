//! The solver is independent of the built-in library. This builds a small
//! component library from scratch, adds a compatibility constraint and lets
//! the solver interpolate around a user choice.

use nanoccs::explain::explain;
use nanoccs::pipeline::Compiler;
use nanoccs::registry::{Constraint, DefaultCandidate, Registry, RegistryBuilder, SlotSpec};

fn dinner() -> Registry {
    let mut b = RegistryBuilder::new();
    let meal = b.component("Meal", None, None);

    let dish = b.abstract_class("Dish", None);
    let pasta = b.component("Pasta", Some("pasta"), Some(dish));
    let fish = b.component("Fish", Some("fish"), Some(dish));

    let wine = b.abstract_class("Wine", None);
    let red = b.component("Red", Some("red"), Some(wine));
    let white = b.component("White", Some("white"), Some(wine));

    b.slot(meal, SlotSpec::component("main", dish).defaults([pasta, fish].map(DefaultCandidate::component)));
    b.slot(meal, SlotSpec::component("wine", wine).defaults([red, white].map(DefaultCandidate::component)));
    b.constraint(meal, Constraint::forbid_pair("W1", ("main", fish), ("wine", red)));
    b.build(meal).expect("library passes the audit")
}

fn main() {
    let compiler = Compiler::new(dinner());
    print!("{}", compiler.registry().dump());
    for source in ["", "main: fish;", "main: fish; wine: red;"] {
        println!("\n> {source:?}");
        match compiler.compile(source) {
            Ok(c) => print!("{}", explain(&c.solved, compiler.registry())),
            Err(e) => println!("exit {}: {e}", e.exit_code()),
        }
    }
}
