mod config;
mod grid;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bernsym_core::bernoulli::{power_sum, BernoulliCache};
use bernsym_core::exact::fmt_rational;
use bernsym_core::identities::T14Variant;
use bernsym_core::series::{SeriesError, DEFAULT_ORDER};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use config::{parse_corruption, parse_selections, parse_ys, Format, RunConfig};
use grid::VerifyOptions;
use report::{write_rows, Row};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("series error: {0}")]
    Series(#[from] SeriesError),
}

#[derive(Parser)]
#[command(
    name = "bernsym",
    version,
    about = "Exact Bernoulli numbers, power sums and symmetry-identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print B_n and the polynomial B_n(x).
    Bernoulli { n: usize },
    /// Print S_k(n) = 0^k + 1^k + ... + n^k.
    Powersum { k: u32, n: u64 },
    /// Verify identity families over a grid of n and weights.
    Verify(VerifyArgs),
    /// Check generating-function quotients coefficient by coefficient.
    SeriesCheck(SeriesArgs),
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "BERNSYM_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Report 0 for every elapsed time so output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum T14Arg {
    Pattern,
    Literal,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated family ids (T1, C13, INTRO, T2>C3, COLLAPSE) or `all`.
    #[arg(long, default_value = "all")]
    families: String,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    /// Weights range over 1..=W.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    weights: u64,
    /// Add a known perturbation to one side, e.g. `T8:1`.
    #[arg(long, hide = true)]
    corrupt: Option<String>,
    /// Third side of T14 to use.
    #[arg(long, value_enum, default_value = "pattern")]
    t14: T14Arg,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    weights: u64,
    /// Comma-separated rational values used for every y.
    #[arg(long, default_value = "0,1/2")]
    ys: String,
    /// Add 1 to this coefficient of every left-hand series.
    #[arg(long, hide = true)]
    corrupt: Option<usize>,
    #[command(flatten)]
    output: Output,
}

fn run_config(
    families: &str,
    max_n: usize,
    weights: u64,
    series_order: usize,
    out: &Output,
) -> Result<RunConfig, CliError> {
    let cfg = RunConfig {
        max_n,
        weight_range: weights,
        families: parse_selections(families)?,
        series_order,
        output_format: out.format,
        output_path: out.out.clone(),
        parallelism: out.jobs as usize,
        timing: !out.no_timing,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, rows: &[Row]) -> Result<bool, CliError> {
    match &cfg.output_path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_rows(&mut file, rows, cfg.output_format)?;
            let failed = rows.iter().filter(|r| !r.passed()).count();
            eprintln!(
                "{} rows, {} failed; report written to {}",
                rows.len(),
                failed,
                path.display()
            );
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_rows(&mut lock, rows, cfg.output_format)?;
        }
    }
    Ok(rows.iter().all(Row::passed))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Bernoulli { n } => {
            let mut cache = BernoulliCache::new();
            let mut out = io::stdout().lock();
            writeln!(out, "{}", fmt_rational(cache.number(n)))?;
            writeln!(out, "{}", cache.polynomial(n))?;
            Ok(true)
        }
        Command::Powersum { k, n } => {
            writeln!(io::stdout().lock(), "{}", fmt_rational(&power_sum(k, n)))?;
            Ok(true)
        }
        Command::Verify(args) => {
            let cfg = run_config(&args.families, args.max_n, args.weights, DEFAULT_ORDER, &args.output)?;
            let opts = VerifyOptions {
                corrupt: args.corrupt.as_deref().map(parse_corruption).transpose()?,
                t14: match args.t14 {
                    T14Arg::Pattern => T14Variant::PatternCompleted,
                    T14Arg::Literal => T14Variant::Literal,
                },
            };
            let rows = grid::run_verify(&cfg, &opts)?;
            emit(&cfg, &rows)
        }
        Command::SeriesCheck(args) => {
            let cfg = run_config("all", 0, args.weights, args.order, &args.output)?;
            let ys = parse_ys(&args.ys)?;
            let rows = grid::run_series(&cfg, &ys, args.corrupt)?;
            emit(&cfg, &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("bernsym: {e}");
            ExitCode::from(2)
        }
    }
}
