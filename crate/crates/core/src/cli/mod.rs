//! The `seqaccel` command-line front end.

pub mod args;
pub mod input;
pub mod render;
pub mod reproduce;

use std::ffi::OsString;
use std::io::Write;

pub use args::{parse_args, Command, Fixture, InputSource, Invocation, OutputFormat, RunSpec, TableId};

use crate::diagnostics::classify;
use crate::error::Result;
use crate::euler_maclaurin::zeta_breakdown;
use crate::oligomer::{chain_limit, ChainLimitMode};

/// Exit status of `reproduce` when a cell falls outside its tolerance.
pub const EXIT_MISMATCH: i32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub status: i32,
}

fn emit(format: OutputFormat, json: impl FnOnce() -> serde_json::Value, table: impl FnOnce() -> String) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json()).expect("values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Table => table(),
    }
}

pub fn run(spec: &RunSpec) -> Result<Output> {
    let f = spec.format;
    let mut status = 0;
    let stdout = match &spec.command {
        Command::Transform { input: src, config } => {
            let s = input::load_sequence(src)?;
            let r = crate::transform(&s, config)?;
            emit(
                f,
                || render::transform_json(&r.tableau, &r.report),
                || render::transform_table(&r.tableau, &r.report),
            )
        }
        Command::Classify { input: src } => {
            let c = classify(&input::load_sequence(src)?);
            emit(f, || render::class_json(&c), || render::class_table(&c))
        }
        Command::Zeta { z, n, k } => {
            let e = zeta_breakdown(*z, *n, *k)?;
            emit(f, || render::zeta_json(&e), || render::zeta_table(&e))
        }
        Command::Oligomer { input: src, config } => {
            let t = input::load_table(src)?;
            let mode = config.clone().map_or(ChainLimitMode::Auto, ChainLimitMode::Fixed);
            let r = chain_limit(&t, &mode)?;
            emit(f, || render::chain_json(&r), || render::chain_table(&r))
        }
        Command::Reproduce { table } => {
            let checks = reproduce::checks(*table)?;
            let ok = checks.iter().all(|c| c.all_ok());
            if !ok {
                status = EXIT_MISMATCH;
            }
            emit(
                f,
                || serde_json::json!({ "tables": checks, "all_match": ok }),
                || render_checks(&checks, ok),
            )
        }
    };
    Ok(Output { stdout, status })
}

fn render_checks(checks: &[reproduce::TableCheck], ok: bool) -> String {
    let mut s = reproduce::render_table(checks);
    s.push_str(if ok { "all cells match\n" } else { "some cells do not match\n" });
    s
}

/// Parses `argv`, runs, writes to stdout/stderr and returns the exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|inv| match inv {
        Invocation::Info(text) => Ok(Output { stdout: text, status: 0 }),
        Invocation::Run(spec) => run(&spec),
    });
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.status
        }
        Err(e) => {
            eprintln!("seqaccel: {e}");
            e.exit_code()
        }
    }
}
