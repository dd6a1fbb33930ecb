//! Command-line front end for `ga-cox-core`.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid configuration,
//! 3 resource cap exceeded, 4 a `verify` check failed.

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ga_cox_core::{BlowupModel, Error as CoreError, Field, Limits};

use crate::config::{parse_config, parse_field, ConfigError, LoadedConfig};
use crate::report::Report;

/// Environment variable capping the monomial count of one graded piece.
pub const MAX_PIECE_ENV: &str = "GA_COX_MAX_PIECE";
/// Environment variable capping the number of candidate classes.
pub const MAX_CLASSES_ENV: &str = "GA_COX_MAX_CLASSES";
pub const DEFAULT_MAX_PIECE: usize = 20_000;
pub const DEFAULT_MAX_CLASSES: usize = 100_000;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ga-cox",
    version,
    about = "Cox rings of blow-ups of projective space along linear subspaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    /// Coefficient field, overriding the configuration: Q, F_p or p.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Worker threads for per-class work.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on monomials per graded piece; 0 disables.
    #[arg(long, global = true)]
    pub max_piece: Option<usize>,
    /// Cap on candidate classes per search; 0 disables.
    #[arg(long, global = true)]
    pub max_classes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Variable catalog, weights, and the derivation matrix.
    Model { config: PathBuf },
    /// Piece and invariant dimensions of a class.
    Dim(ClassArgs),
    /// Whether a class is effective, with its invariant dimension.
    Effective(ClassArgs),
    /// Generators of the invariant ring up to a weight.
    Generators(WeightArgs),
    /// Generators and the relations among them up to a weight.
    Relations(RelationArgs),
    /// The boundary invariants of an m0n model.
    Boundary { config: PathBuf },
    /// Components of the fixed locus of the action.
    FixedComponents { config: PathBuf },
    /// Cross-checks every computation up to a weight; exits 4 on failure.
    Verify(WeightArgs),
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    pub config: PathBuf,
    /// Class expression such as "2H - E{1,2} - E{3}" or "3H - E1 - E2".
    #[arg(long)]
    pub class: String,
    /// Also print the canonical invariant basis.
    #[arg(long)]
    pub basis: bool,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    pub config: PathBuf,
    /// Weight bound; defaults to the largest boundary weight for m0n and to
    /// one more than the largest variable weight otherwise.
    #[arg(long)]
    pub max_weight: Option<i64>,
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    pub config: PathBuf,
    /// Relation weight bound; defaults to twice the generator default.
    #[arg(long)]
    pub max_weight: Option<i64>,
    /// Weight bound of the generator search the relations are taken over;
    /// defaults to the generator default, capped at --max-weight.
    #[arg(long)]
    pub generator_weight: Option<i64>,
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration {path}: {error}")]
    Config { path: String, error: ConfigError },
    #[error("{0}")]
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Config { .. } => EXIT_CONFIG,
            Failure::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        match e {
            CoreError::ResourceLimit(_) => Failure::Resource(format!(
                "{e} (raise --max-piece/{MAX_PIECE_ENV} or --max-classes/{MAX_CLASSES_ENV}, or lower --max-weight)"
            )),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn cap_from(flag: Option<usize>, env: &str, default: usize) -> Result<Option<usize>, Failure> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var(env) {
            Ok(s) => s.trim().parse().map_err(|_| {
                Failure::Usage(format!("{env} must be a nonnegative integer, got {s:?}"))
            })?,
            Err(_) => default,
        },
    };
    Ok((value > 0).then_some(value))
}

fn load(path: &Path, field: Option<Field>) -> Result<(LoadedConfig, BlowupModel), Failure> {
    let config_err = |error| Failure::Config {
        path: path.display().to_string(),
        error,
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        config_err(ConfigError {
            line: None,
            message: format!("cannot read file: {e}"),
        })
    })?;
    let mut loaded = parse_config(&text).map_err(config_err)?;
    if let Some(f) = field {
        loaded.spec.field = f;
    }
    let model = loaded.build().map_err(config_err)?;
    Ok((loaded, model))
}

fn execute(cli: &Cli, limits: &Limits) -> Result<Report, Failure> {
    let field = cli
        .global
        .field
        .as_deref()
        .map(parse_field)
        .transpose()
        .map_err(Failure::Usage)?;
    Ok(match &cli.command {
        Command::Model { config } => commands::model_report(&load(config, field)?.1),
        Command::Dim(a) | Command::Effective(a) => {
            let (_, model) = load(&a.config, field)?;
            commands::dim_report(
                &model,
                &a.class,
                a.basis,
                matches!(cli.command, Command::Effective(_)),
                limits,
            )?
        }
        Command::Generators(a) => {
            let (_, model) = load(&a.config, field)?;
            let w = a
                .max_weight
                .unwrap_or_else(|| commands::default_max_weight(&model));
            commands::generators_report(&model, w, limits)?
        }
        Command::Relations(a) => {
            let (_, model) = load(&a.config, field)?;
            let base = commands::default_max_weight(&model);
            let w = a.max_weight.unwrap_or(2 * base);
            let gw = a.generator_weight.unwrap_or(base.min(w));
            commands::relations_report(&model, gw, w, limits)?
        }
        Command::Boundary { config } => commands::boundary_report(&load(config, field)?.1)?,
        Command::FixedComponents { config } => commands::fixed_report(&load(config, field)?.1)?,
        Command::Verify(a) => {
            let (loaded, model) = load(&a.config, field)?;
            let w = a
                .max_weight
                .unwrap_or_else(|| commands::default_max_weight(&model));
            if w < 1 {
                return Err(Failure::Usage(format!(
                    "--max-weight must be at least 1, got {w}"
                )));
            }
            Report::Verify(verify::verify(&model, &loaded.spec, w, limits)?)
        }
    })
}

fn run_parsed(cli: &Cli) -> Outcome {
    let fail = |f: Failure| Outcome {
        code: f.code(),
        stdout: String::new(),
        stderr: format!("error: {f}\n"),
    };
    let limits = match (
        cap_from(cli.global.max_piece, MAX_PIECE_ENV, DEFAULT_MAX_PIECE),
        cap_from(cli.global.max_classes, MAX_CLASSES_ENV, DEFAULT_MAX_CLASSES),
    ) {
        (Ok(max_piece), Ok(max_classes)) => Limits {
            max_piece,
            max_classes,
        },
        (Err(f), _) | (_, Err(f)) => return fail(f),
    };
    let result = match cli.global.threads {
        Some(0) => return fail(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli, &limits)),
            Err(e) => return fail(Failure::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(cli, &limits),
    };
    match result {
        Err(f) => fail(f),
        Ok(report) => {
            let stdout = match cli.global.format {
                Format::Tsv => report.to_tsv(),
                Format::Json => report.to_json(),
            };
            let (code, stderr) = match &report {
                Report::Verify(v) if !v.passed => {
                    (EXIT_VERIFY, "error: verification failed\n".to_string())
                }
                _ => (EXIT_OK, String::new()),
            };
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_parsed(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}
