//! Command-line front end for `kfind-core`: data generation, the three
//! identifiers, condition verifiers, the elbow baseline and the 3-cover
//! gadget. Every command prints (or writes) a `key=value` report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod io;
pub mod report;
pub mod specfile;

pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent input; exit code 2.
    #[error("{0}")]
    Input(String),
    /// The algorithm itself failed; exit code 1. Carries the report so far.
    #[error("{source}")]
    Algo {
        source: kfind_core::Error,
        report: Box<Report>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Algo { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kfind", version, about = "Estimate the number of clusters in a point set")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a mixture described by a spec file.
    GenGmm(GenArgs),
    /// Sample a stochastic block model described by a spec file.
    GenSbm(GenArgs),
    /// Peeling identifier; sweeps the weight when --w0 is absent.
    IdentifyPeel(PeelArgs),
    /// Convex-relaxation identifier.
    IdentifyConvex(ConvexArgs),
    /// Exhaustive identifier for tiny inputs.
    IdentifyExhaustive(ExhaustiveArgs),
    /// Check a separation or no-tight-sub-cluster condition on labelled data.
    Verify(VerifyArgs),
    /// Elbow-method baseline.
    BenchElbow(ElbowArgs),
    /// Exact Bounded 3-Cover instances and their Check-NTSC decision.
    #[command(name = "gadget-3cover")]
    Gadget3Cover(GadgetArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Report path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Random seed (default: the input's seed, else 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override an algorithm constant, e.g. --set r_coeff=0.02.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Spec file.
    #[arg(long)]
    pub input: PathBuf,
    /// Point CSV to write.
    #[arg(long)]
    pub output: PathBuf,
    /// Labels file to write.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Number of points (overrides the spec file).
    #[arg(long)]
    pub n: Option<usize>,
    /// Random seed (default: the spec file's seed, else 0).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct PeelArgs {
    /// Point CSV.
    #[arg(long)]
    pub input: PathBuf,
    /// Known lower bound on cluster weight.
    #[arg(long)]
    pub w0: Option<f64>,
    /// Ground-truth labels, used only to report misassigned points.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ConvexArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub w0: f64,
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ExhaustiveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    WeakNtsc,
    Ntsc,
    WeakSeparation,
    StrongSeparation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, value_enum)]
    pub condition: ConditionArg,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Random subsets per cluster in sampled mode.
    #[arg(long, default_value_t = 5000)]
    pub trials: usize,
    /// Separation factor.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Random directions per subset for the strong condition.
    #[arg(long, default_value_t = 16)]
    pub directions: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ElbowArgs {
    /// Point CSV; without it the elbow counterexample mixture is sampled.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Counterexample size parameter (2k+1 components).
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 100)]
    pub d: usize,
    #[arg(long, default_value_t = 5000)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateArg {
    Yes,
    No,
}

#[derive(Debug, Clone, Args)]
pub struct GadgetArgs {
    /// Instance file: universe size, then one `a b c` line per set (1-based).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generate an instance with (yes) or without (no) an exact cover.
    #[arg(long, value_enum)]
    pub generate: Option<GenerateArg>,
    /// Universe size for generated instances.
    #[arg(long, default_value_t = 9)]
    pub m: usize,
    /// Draws allowed when generating a no-instance.
    #[arg(long, default_value_t = 10_000)]
    pub attempts: usize,
    /// Write the instance text here.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    /// Where the report goes; `None` means stdout.
    pub fn report_path(&self) -> Option<&PathBuf> {
        match self {
            Command::GenGmm(a) | Command::GenSbm(a) => a.report.as_ref(),
            Command::IdentifyPeel(a) => a.common.output.as_ref(),
            Command::IdentifyConvex(a) => a.common.output.as_ref(),
            Command::IdentifyExhaustive(a) => a.common.output.as_ref(),
            Command::Verify(a) => a.common.output.as_ref(),
            Command::BenchElbow(a) => a.common.output.as_ref(),
            Command::Gadget3Cover(a) => a.common.output.as_ref(),
        }
    }
}

/// Runs one command and returns its report.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::GenGmm(a) => commands::gen_gmm(a),
        Command::GenSbm(a) => commands::gen_sbm(a),
        Command::IdentifyPeel(a) => commands::identify_peel(a),
        Command::IdentifyConvex(a) => commands::identify_convex(a),
        Command::IdentifyExhaustive(a) => commands::identify_exhaustive(a),
        Command::Verify(a) => commands::verify(a),
        Command::BenchElbow(a) => commands::bench_elbow(a),
        Command::Gadget3Cover(a) => commands::gadget(a),
    }
}
