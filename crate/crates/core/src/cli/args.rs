use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::core_model::{AcceleratorConfig, InterpolationPoints, Method, DEFAULT_BREAKDOWN_TOL};
use crate::error::{Error, Result};

pub const TOL_ENV: &str = "SEQACCEL_TOL";

#[derive(Debug, Parser)]
#[command(name = "seqaccel", version, about = "Convergence acceleration of sequences and series")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Transform a sequence and report the best limit estimate
    Transform {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Classify the convergence type of a sequence
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Euler–Maclaurin estimate of ζ(z)
    Zeta {
        #[arg(long)]
        z: f64,
        /// Index of the last explicitly summed term
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Number of Bernoulli correction terms
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Extrapolate oligomer total energies to the infinite chain
    Oligomer {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Regenerate the bundled reference tables and compare cell by cell
    Reproduce {
        #[arg(long, value_enum, default_value_t = TableId::All)]
        table: TableId,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV or JSON file, `-` for stdin
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Bundled data set: table1, table1-dif, table1-av
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Debug, Args)]
struct MethodArgs {
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// linear, reciprocal, reciprocal:β, or a comma-separated list
    #[arg(long)]
    points: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    Zeta,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Table1,
    Table1Dif,
    Table1Av,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Path(PathBuf),
    Stdin,
    Fixture(Fixture),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Transform { input: InputSource, config: AcceleratorConfig },
    Classify { input: InputSource },
    Zeta { z: f64, n: usize, k: usize },
    /// `config` is `None` for automatic method choice.
    Oligomer { input: InputSource, config: Option<AcceleratorConfig> },
    Reproduce { table: TableId },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub format: OutputFormat,
}

/// What the argument parser asks for.
#[derive(Debug, Clone, PartialEq)]
pub enum Invocation {
    Run(RunSpec),
    /// `--help` or `--version` text.
    Info(String),
}

/// Parses a full argument vector (program name first), reading the default
/// tolerance override from the environment.
pub fn parse_args<I, T>(argv: I) -> Result<Invocation>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var(TOL_ENV).ok())
}

pub fn parse_args_with_env<I, T>(argv: I, tol_env: Option<String>) -> Result<Invocation>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Ok(Invocation::Info(e.render().to_string()))
                }
                _ => Err(Error::Usage(e.render().to_string())),
            }
        }
    };
    let default_tol = match tol_env {
        Some(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| Error::Usage(format!("{TOL_ENV}={v:?} is not a positive number")))?,
        None => DEFAULT_BREAKDOWN_TOL,
    };
    let (command, format) = match cli.command {
        Cmd::Transform { input, method, format } => {
            let input = input_source(input, Fixture::Table1Dif)?;
            let name = method
                .method
                .as_deref()
                .ok_or_else(|| Error::Usage("transform requires --method".into()))?;
            let config = method_config(name, &method, default_tol)?;
            (Command::Transform { input, config }, format)
        }
        Cmd::Classify { input, format } => {
            (Command::Classify { input: input_source(input, Fixture::Table1Dif)? }, format)
        }
        Cmd::Zeta { z, n, k, format } => {
            if !(z > 1.0) || !z.is_finite() {
                return Err(Error::Usage(format!("--z {z}: the series needs z > 1")));
            }
            (Command::Zeta { z, n, k }, format)
        }
        Cmd::Oligomer { input, method, format } => {
            let input = input_source(input, Fixture::Table1)?;
            if matches!(input, InputSource::Fixture(f) if f != Fixture::Table1) {
                return Err(Error::Usage("oligomer takes --fixture table1".into()));
            }
            let config = match method.method.as_deref() {
                None | Some("auto") => None,
                Some(name) => Some(method_config(name, &method, default_tol)?),
            };
            (Command::Oligomer { input, config }, format)
        }
        Cmd::Reproduce { table, format } => (Command::Reproduce { table }, format),
    };
    Ok(Invocation::Run(RunSpec { command, format }))
}

fn input_source(args: InputArgs, table1_as: Fixture) -> Result<InputSource> {
    match (args.input, args.fixture) {
        (Some(p), None) if p.as_os_str() == "-" => Ok(InputSource::Stdin),
        (Some(p), None) => Ok(InputSource::Path(p)),
        (None, Some(f)) => match f.as_str() {
            "table1" => Ok(InputSource::Fixture(table1_as)),
            "table1-dif" => Ok(InputSource::Fixture(Fixture::Table1Dif)),
            "table1-av" => Ok(InputSource::Fixture(Fixture::Table1Av)),
            other => Err(Error::Usage(format!(
                "unknown fixture {other:?} (table1, table1-dif, table1-av)"
            ))),
        },
        (None, None) => Err(Error::Usage("one of --input or --fixture is required".into())),
        (Some(_), Some(_)) => Err(Error::Usage("--input and --fixture are exclusive".into())),
    }
}

fn method_config(name: &str, m: &MethodArgs, default_tol: f64) -> Result<AcceleratorConfig> {
    let method: Method = name.parse().map_err(|e: Error| Error::Usage(e.to_string()))?;
    let mut cfg = AcceleratorConfig::new(method).with_tol(m.tol.unwrap_or(default_tol));
    if let Some(a) = m.alpha {
        cfg = cfg.with_alpha(a);
    }
    if let Some(b) = m.beta {
        cfg = cfg.with_beta(b);
    }
    if let Some(p) = &m.points {
        if !method.uses_points() {
            return Err(Error::Usage(format!("--points does not apply to {method}")));
        }
        let pts: InterpolationPoints = p.parse().map_err(|e: Error| Error::Usage(e.to_string()))?;
        cfg = cfg.with_points(pts);
    }
    cfg.validate().map_err(|e| Error::Usage(e.to_string()))?;
    Ok(cfg)
}
