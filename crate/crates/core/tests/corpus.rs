//! Every model shipped in examples/models parses, prints back to equivalent
//! source and compiles to the documented exit code.

use std::fs;
use std::path::PathBuf;

use nanoccs::pipeline::Compiler;
use nanoccs::syntax::{parse_source, print_document};

fn models() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/models");
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "nano"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_is_not_empty() {
    assert!(models().len() >= 6);
}

#[test]
fn printing_round_trips() {
    for (name, src) in models() {
        let ast = parse_source(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_document(&ast);
        let again = parse_source(&printed).unwrap();
        assert!(again.structurally_eq(&ast), "{name}:\n{printed}");
        assert_eq!(print_document(&again), printed, "{name}");
    }
}

#[test]
fn compile_outcomes() {
    let compiler = Compiler::seeded();
    for (name, src) in models() {
        let code = compiler.compile(&src).err().map_or(0, |e| e.exit_code());
        let expected = if name == "hexagonal_periodic" { 3 } else { 0 };
        assert_eq!(code, expected, "{name}");
    }
}
