//! Monte-Carlo experiment engine: instance generators, seeded parallel
//! trials, aggregated statistics and competitive-ratio estimates.

pub mod generator;
pub mod ratio;
pub mod stats;
pub mod trials;

pub use generator::{generate_instance, Family, FnSampler, GeneratorSpec, ItemSampler};
pub use ratio::{
    benchmark_value, competitive_ratio_against, competitive_ratio_estimate, ratio_sweep, Benchmark, RatioEstimate,
    SweepEntry, SweepReport,
};
pub use stats::{TrialRecord, TrialStats};
pub use trials::{all_permutations, run_trials, selection_histogram, trial_rngs, TrialConfig, EXHAUSTIVE_MAX_N};
