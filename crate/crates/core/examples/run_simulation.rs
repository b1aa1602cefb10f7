//! Compiles a model, runs it and writes PGM frames plus summary.json.
//!
//! cargo run --example run_simulation [file.nano] [seed] [out-dir]

use std::path::PathBuf;

use nanoccs::output::{write_summary, write_summary_json, PgmSequenceSink};
use nanoccs::pipeline::Compiler;
use nanoccs::runtime::instantiate;

fn main() {
    let mut args = std::env::args().skip(1);
    let source = match args.next() {
        Some(path) => std::fs::read_to_string(path).expect("readable model"),
        None => include_str!("models/stupid_model_1.nano").to_string(),
    };
    let seed = args.next().map_or(42, |s| s.parse().expect("numeric seed"));
    let out = args.next().map_or_else(|| std::env::temp_dir().join("nanoccs-example"), PathBuf::from);

    let compiler = Compiler::seeded();
    let compiled = compiler.compile(&source).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    });
    let mut world = instantiate(&compiled.solved, compiler.registry(), seed).expect("model instantiates");
    world.set_max_time(1000.0);

    std::fs::create_dir_all(&out).expect("output directory");
    let mut sink = PgmSequenceSink::create(&out).expect("frame sink");
    let stop = world.run(&mut sink).expect("run completes");
    let summary = world.summary();
    write_summary_json(&summary, &out).expect("summary written");

    println!("stopped: {}", stop.as_str());
    write_summary(&summary, &mut std::io::stdout()).unwrap();
    println!("{} frames in {}", sink.written().len(), out.display());
}
