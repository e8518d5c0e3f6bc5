use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "expknap",
    version,
    about = "Online selection under an expected capacity constraint",
    long_about = "Runs the threshold secretary rules and the online knapsack algorithms over seeded \
                  random arrival orders and reports plot-ready statistics.\n\n\
                  Defaults: t = floor(n/e) (histogram: floor(n/e)+1), capacity-aug C = 2, trials = 10000, \
                  seed = 1 or $EXPKNAP_SEED.\n\
                  Machine-readable output goes to stdout (or --out); a one-line summary goes to stderr.\n\
                  Exit codes: 0 success, 1 runtime error, 2 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// t-Threshold (or classical) secretary rule on n ranked values.
    Secretary(SecretaryArgs),
    /// k-secretary t-Threshold rule; success means selecting all top-k items.
    Ksecretary(KSecretaryArgs),
    /// AUG-ON / ON on a generated or loaded knapsack instance.
    Knapsack(KnapsackArgs),
    /// Count histogram of the t-Threshold rule.
    Histogram(HistogramArgs),
    /// Optimal first-selection position i* and its success bound.
    Lowerbound(SizeArgs),
    /// Value of the adversarial-order LP.
    Adversarial(SizeArgs),
    /// Offline reference values (fractional, OFF, 0/1) for one instance.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    /// Number of random arrival orders.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Base seed; every trial derives its own streams from it.
    #[arg(long, env = "EXPKNAP_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (results do not depend on it).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Enumerate all n! orders instead of sampling (n <= 8); ignores --trials.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SecretaryRule {
    TThreshold,
    Classical,
}

#[derive(Debug, Args)]
pub struct SecretaryArgs {
    #[arg(long)]
    pub n: usize,
    /// Observation length; defaults to floor(n/e).
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_enum, default_value = "t-threshold")]
    pub algorithm: SecretaryRule,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct KSecretaryArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Observation length; defaults to floor(n/e).
    #[arg(long)]
    pub t: Option<usize>,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct HistogramArgs {
    #[arg(long)]
    pub n: usize,
    /// Observation length; defaults to floor(n/e)+1.
    #[arg(long)]
    pub t: Option<usize>,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: Output,
}

/// Where a knapsack instance comes from.
#[derive(Debug, Args)]
pub struct InstanceSource {
    /// CSV (`id,value,weight`) or JSON instance file.
    #[arg(long, conflicts_with_all = ["generator", "n"])]
    pub instance: Option<PathBuf>,
    /// Raw knapsack capacity of --instance; weights are divided by it.
    #[arg(long, requires = "instance")]
    pub capacity: Option<f64>,
    /// Generator: uniform, exponential[:mean], correlated[:rho] or custom:vlo:vhi:wlo:whi.
    #[arg(long, requires = "n")]
    pub generator: Option<String>,
    /// Number of generated items.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KnapsackRule {
    On,
    AugOn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Denominator {
    /// Fractional optimum at capacity 1.
    Fractional,
    /// 0/1 optimum at capacity 1.
    Integral,
    /// OFF at the augmented capacity.
    Off,
}

#[derive(Debug, Args)]
pub struct KnapsackArgs {
    #[command(flatten)]
    pub source: InstanceSource,
    /// Augmented capacity C in (1, 2].
    #[arg(long = "capacity-aug", default_value_t = 2.0)]
    pub capacity_aug: f64,
    #[arg(long, value_enum, default_value = "on")]
    pub algorithm: KnapsackRule,
    /// Observation length for aug-on; defaults to floor(n/e). ON always uses floor(n/e).
    #[arg(long)]
    pub t: Option<usize>,
    /// Ratio denominator; defaults to fractional for on and off for aug-on.
    #[arg(long, value_enum)]
    pub denominator: Option<Denominator>,
    /// Weight grid for the quantized 0/1 oracle when n > 20.
    #[arg(long, default_value_t = 1000)]
    pub resolution: usize,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: InstanceSource,
    /// Augmented capacity C in (1, 2].
    #[arg(long = "capacity-aug", default_value_t = 2.0)]
    pub capacity_aug: f64,
    /// Weight grid for the quantized 0/1 oracle when n > 20.
    #[arg(long, default_value_t = 1000)]
    pub resolution: usize,
    /// Seed for --generator.
    #[arg(long, env = "EXPKNAP_SEED", default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}
