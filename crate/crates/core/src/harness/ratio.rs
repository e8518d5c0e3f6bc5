//! Competitive-ratio estimation: mean online value over a chosen offline
//! benchmark, and an empirical worst case over generator families.

use serde::Serialize;

use crate::algorithm::OnlineAlgorithm;
use crate::error::{Error, Result};
use crate::harness::generator::{generate_instance, Family, GeneratorSpec};
use crate::harness::stats::TrialStats;
use crate::harness::trials::{run_trials, TrialConfig};
use crate::model::{best_k_subset, Instance};
use crate::offline::{fractional_opt, integral_opt, off_greedy};

/// Offline value a ratio is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Benchmark {
    /// Total value of the best `k` items (`k = 1`: the best item).
    BestK(usize),
    /// LP-relaxation optimum at `capacity`; upper-bounds the 0/1 optimum.
    Fractional { capacity: f64 },
    /// 0/1 optimum at `capacity` (exact for `n <= 20`, else quantized DP).
    Integral { capacity: f64, resolution: usize },
    /// Value of the prefix greedy `OFF` on the full instance.
    Off { capacity: f64 },
}

pub fn benchmark_value(instance: &Instance, benchmark: &Benchmark) -> Result<f64> {
    match *benchmark {
        Benchmark::BestK(k) => Ok(best_k_subset(instance.items(), k).iter().map(|i| i.value).sum()),
        Benchmark::Fractional { capacity } => Ok(fractional_opt(instance, capacity)?.value),
        Benchmark::Integral { capacity, resolution } => Ok(integral_opt(instance, capacity, resolution)?.value),
        Benchmark::Off { capacity } => Ok(off_greedy(instance, capacity)?.total_value),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioEstimate {
    pub ratio: f64,
    /// Standard error of `ratio`.
    pub std_error: f64,
    pub denominator: f64,
    pub benchmark: Benchmark,
    pub stats: TrialStats,
}

/// `mean online value / benchmark` using the algorithm's default benchmark.
pub fn competitive_ratio_estimate(
    instance: &Instance,
    algorithm: &dyn OnlineAlgorithm,
    config: &TrialConfig,
) -> Result<RatioEstimate> {
    competitive_ratio_against(instance, algorithm, algorithm.benchmark(), config)
}

pub fn competitive_ratio_against(
    instance: &Instance,
    algorithm: &dyn OnlineAlgorithm,
    benchmark: Benchmark,
    config: &TrialConfig,
) -> Result<RatioEstimate> {
    if instance.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let denominator = benchmark_value(instance, &benchmark)?;
    if denominator.is_nan() || denominator <= 0.0 {
        return Err(Error::DegenerateInstance(format!(
            "benchmark {benchmark:?} has value {denominator}"
        )));
    }
    let stats = run_trials(instance, algorithm, config)?;
    Ok(RatioEstimate {
        ratio: stats.mean_value / denominator,
        std_error: stats.std_error_value / denominator,
        denominator,
        benchmark,
        stats,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub generator: String,
    pub n: usize,
    pub instance_seed: u64,
    pub ratio: f64,
    pub std_error: f64,
}

/// Ratios over a grid of generated instances. `empirical_min_ratio` is the
/// smallest estimate seen; it approximates the worst case only over the
/// instances tried.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    pub empirical_min_ratio: f64,
}

pub fn ratio_sweep(
    algorithm: &dyn OnlineAlgorithm,
    families: &[Family],
    sizes: &[usize],
    instances_per_cell: u64,
    config: &TrialConfig,
) -> Result<SweepReport> {
    let mut entries = Vec::new();
    for family in families {
        for &n in sizes {
            let spec = GeneratorSpec::new(*family, n)?;
            for j in 0..instances_per_cell {
                let instance_seed = config.seed.wrapping_add(j);
                let instance = generate_instance(&spec, instance_seed)?;
                let est = competitive_ratio_estimate(&instance, algorithm, config)?;
                entries.push(SweepEntry {
                    generator: family.to_string(),
                    n,
                    instance_seed,
                    ratio: est.ratio,
                    std_error: est.std_error,
                });
            }
        }
    }
    if entries.is_empty() {
        return Err(Error::InvalidArgument("sweep needs at least one family, size and instance".into()));
    }
    let empirical_min_ratio = entries.iter().map(|e| e.ratio).fold(f64::INFINITY, f64::min);
    Ok(SweepReport {
        entries,
        empirical_min_ratio,
    })
}
