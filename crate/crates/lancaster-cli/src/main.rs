//! `lancaster` command line: coefficient estimation, independence tests and
//! confidence intervals on CSV data, plus Monte Carlo study execution.
//!
//! Exit codes: 0 success, 2 usage, 3 input parse error, 4 domain/numeric
//! error.

mod commands;
mod csvio;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "lancaster",
    version,
    about = "Lancaster correlation: estimation, independence tests, confidence intervals, studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate correlation coefficients on CSV data or a generated sample.
    Estimate(EstimateArgs),
    /// Run an independence test on CSV data.
    Test(TestArgs),
    /// Compute a confidence interval for the Lancaster coefficient.
    Ci(CiArgs),
    /// Run a Monte Carlo study described by a TOML config file.
    Study(StudyArgs),
    /// Recompute the frozen Monte Carlo true-value table.
    TrueValues(TrueValuesArgs),
}

#[derive(Args)]
struct EstimateArgs {
    /// Input CSV with at least two numeric columns (omit when generating
    /// via --distribution).
    input: Option<String>,
    /// Two columns, by 0-based index or header name, e.g. "0,1" or "x,y".
    #[arg(long, default_value = "0,1")]
    columns: String,
    /// Coefficients to report (comma separated); defaults to all.
    #[arg(long)]
    coefficients: Option<String>,
    /// Seed (xi tie-breaking; sample generation when --distribution is set).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generate the sample from a distribution label instead of reading CSV.
    #[arg(long, conflicts_with = "input")]
    distribution: Option<String>,
    /// Sample size for --distribution.
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    /// Write the analyzed sample to this CSV path (scatterplot data).
    #[arg(long)]
    dump_sample: Option<String>,
    /// Output format.
    #[arg(long, default_value = "table", value_parser = ["table", "csv", "json"])]
    format: String,
}

#[derive(Args)]
struct TestArgs {
    /// Input CSV with at least two numeric columns.
    input: String,
    /// Test id: pearson, spearman, linear, rank_asymptotic,
    /// rank_permutation, dcor, xi, linear_sym, linear_tau.
    #[arg(long)]
    method: String,
    /// Seed for the permutation streams (required: runs are reproducible).
    #[arg(long)]
    seed: u64,
    /// Permutations for the permutation tests.
    #[arg(long, default_value_t = 1000)]
    permutations: usize,
    #[arg(long, default_value = "0,1")]
    columns: String,
}

#[derive(Args)]
struct CiArgs {
    /// Input CSV with at least two numeric columns.
    input: String,
    /// Interval id: plugin, plugin_conservative, boot_linear,
    /// boot_linear_conservative, boot_rank, boot_rank_conservative.
    #[arg(long)]
    method: String,
    /// Confidence level, e.g. 0.95.
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    /// Seed for the bootstrap streams (required: runs are reproducible).
    #[arg(long)]
    seed: u64,
    /// Bootstrap resamples for the covariance estimate.
    #[arg(long, default_value_t = 500)]
    bootstrap: usize,
    #[arg(long, default_value = "0,1")]
    columns: String,
}

#[derive(Args)]
struct StudyArgs {
    /// TOML study config (kind, distributions, n, replications, methods, seed).
    config: String,
    /// Directory for report.csv, report.json and progress.csv.
    #[arg(long, default_value = "study-out")]
    output_dir: String,
    /// Paper-scale run: 10000 replications, 1000 permutations.
    #[arg(long)]
    full_scale: bool,
    /// Reuse cells already present in <output-dir>/progress.csv.
    #[arg(long)]
    resume: bool,
}

#[derive(Args)]
struct TrueValuesArgs {
    /// Monte Carlo sample size per distribution.
    #[arg(long, default_value_t = 10_000_000)]
    n: usize,
    #[arg(long, default_value_t = 424_242)]
    seed: u64,
}

/// CLI failure modes, ordered by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: the invocation itself is wrong (bad flags, unknown ids).
    Usage(String),
    /// Exit 3: input files could not be parsed.
    Parse(String),
    /// Exit 4: the computation rejected the data or parameters.
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Domain(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<lancaster::Error> for CliError {
    fn from(e: lancaster::Error) -> Self {
        use lancaster::Error;
        match e {
            Error::InvalidConfig(_) | Error::InvalidSpec(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Estimate(args) => commands::estimate(&args),
        Command::Test(args) => commands::test(&args),
        Command::Ci(args) => commands::ci(&args),
        Command::Study(args) => commands::study(&args),
        Command::TrueValues(args) => commands::true_values(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
