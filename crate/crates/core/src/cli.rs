//! Command-line driver.
//!
//! Exit codes: 0 success, 1 malformed input or I/O failure, 2 over- or
//! underdetermined model, 3 unsatisfiable constraints, 4 runtime error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::explain::explain;
use crate::output::{write_summary, write_summary_json, NullSink, PgmSequenceSink};
use crate::pipeline::{CompileError, Compiler};
use crate::runtime::{instantiate, OutputKind, RuntimeError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DETERMINATION: i32 = 2;
pub const EXIT_UNSOLVABLE: i32 = 3;
pub const EXIT_RUNTIME: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nanoccs", version, about = "Check, explain and run Nanosyntax models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a model and report whether it can be instantiated.
    Check(Options),
    /// Show every slot of the solved model and where its value came from.
    /// Without a file, lists the component library.
    Explain(Options),
    /// Compile and simulate a model, writing frames and a summary.
    Run(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Model source file.
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for frames and summary.json.
    #[arg(long, env = "NANOCCS_OUT", default_value = "out")]
    pub out: PathBuf,
    #[arg(long = "max-time", default_value_t = 1000.0, value_parser = positive_time)]
    pub max_time: f64,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

fn positive_time(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err("must be a positive number".into())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let compiler = Compiler::seeded();
    match cli.command {
        Command::Check(opts) => cmd_check(&compiler, &opts, out, err),
        Command::Explain(opts) => cmd_explain(&compiler, &opts, out, err),
        Command::Run(opts) => cmd_run(&compiler, &opts, out, err),
    }
}

fn read_source(opts: &Options, err: &mut dyn Write) -> Result<(String, String), i32> {
    let Some(path) = &opts.file else {
        let _ = writeln!(err, "error: no model file given");
        return Err(EXIT_INPUT);
    };
    let name = path.display().to_string();
    match fs::read_to_string(path) {
        Ok(src) => Ok((name, src)),
        Err(e) => {
            let _ = writeln!(err, "{name}: error: {e}");
            Err(EXIT_INPUT)
        }
    }
}

fn compile_error_json(e: &CompileError) -> serde_json::Value {
    match e {
        CompileError::Syntax(s) => {
            let span = s.span();
            json!([{ "kind": "syntax", "message": s.to_string(), "line": span.line, "column": span.column }])
        }
        CompileError::Semantic(s) => json!([{ "kind": "semantic", "message": s.to_string() }]),
        CompileError::Determination(ds) => serde_json::to_value(ds).expect("diagnostics serialize"),
        CompileError::Unsolvable(u) => json!([{ "kind": "unsolvable", "message": u.to_string(), "failure": u.to_json() }]),
    }
}

fn report(name: &str, e: &CompileError, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let code = e.exit_code();
    if opts.json {
        let v = json!({ "file": name, "status": "error", "exitCode": code, "diagnostics": compile_error_json(e) });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
        return code;
    }
    match e {
        CompileError::Determination(ds) => {
            for d in ds {
                let kind = match d.kind {
                    crate::semantics::DiagnosticKind::Underdetermined => "underdetermined",
                    crate::semantics::DiagnosticKind::Overdetermined => "overdetermined",
                };
                let _ = writeln!(err, "{name}:{}:{}: {kind}: {}: {}", d.line, d.column, d.path, d.message);
            }
        }
        other => {
            let _ = writeln!(err, "{name}: error: {other}");
        }
    }
    code
}

pub fn cmd_check(compiler: &Compiler, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (name, src) = match read_source(opts, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match compiler.compile(&src) {
        Ok(_) => {
            if opts.json {
                let v = json!({ "file": name, "status": "ok", "exitCode": EXIT_OK, "diagnostics": [] });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(out, "{name}: ok");
            }
            EXIT_OK
        }
        Err(e) => report(&name, &e, opts, out, err),
    }
}

pub fn cmd_explain(compiler: &Compiler, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if opts.file.is_none() {
        let dump = compiler.registry().dump();
        let _ = if opts.json {
            writeln!(out, "{}", serde_json::to_string_pretty(&dump).expect("json"))
        } else {
            write!(out, "{dump}")
        };
        return EXIT_OK;
    }
    let (name, src) = match read_source(opts, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match compiler.compile(&src) {
        Ok(c) => {
            let explanation = explain(&c.solved, compiler.registry());
            let _ = if opts.json {
                writeln!(out, "{}", explanation.to_json())
            } else {
                write!(out, "{explanation}")
            };
            EXIT_OK
        }
        Err(e) => report(&name, &e, opts, out, err),
    }
}

pub fn cmd_run(compiler: &Compiler, opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (name, src) = match read_source(opts, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let compiled = match compiler.compile(&src) {
        Ok(c) => c,
        Err(e) => return report(&name, &e, opts, out, err),
    };
    match simulate(compiler, &compiled.solved, opts, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let code = match e {
                RuntimeError::Collision { .. } | RuntimeError::ScatterOverflow { .. } => EXIT_RUNTIME,
                _ => EXIT_INPUT,
            };
            if opts.json {
                let v = json!({ "file": name, "status": "error", "exitCode": code, "message": e.to_string() });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(err, "{name}: runtime error: {e}");
            }
            code
        }
    }
}

fn simulate(
    compiler: &Compiler,
    solved: &crate::semantics::ObjectNode,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<(), RuntimeError> {
    let mut world = instantiate(solved, compiler.registry(), opts.seed)?;
    world.set_max_time(opts.max_time);
    let dir: &Path = &opts.out;
    fs::create_dir_all(dir).map_err(|e| crate::output::OutputError::io(dir, e))?;
    let stop = if world.config().outputs.contains(&OutputKind::ImageSequence) {
        let mut sink = PgmSequenceSink::create(dir)?;
        world.run(&mut sink)?
    } else {
        world.run(&mut NullSink)?
    };
    let summary = world.summary();
    write_summary_json(&summary, dir)?;
    if opts.json {
        let _ = writeln!(out, "{}", summary.to_json());
    } else {
        let _ = writeln!(out, "stopped: {}", stop.as_str());
        let _ = write_summary(&summary, out);
    }
    Ok(())
}
