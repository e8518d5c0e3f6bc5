use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algorithm::{OnlineAlgorithm, TThreshold};
use crate::error::{Error, Result};
use crate::harness::stats::{StatsAccumulator, TrialRecord, TrialStats};
use crate::model::{best_k_subset, ArrivalOrder, Instance};

/// Largest `n` for which every permutation can be enumerated.
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// Trials are generated and folded in chunks of this size to bound memory.
const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Enumerate all `n!` orders instead of sampling (`n <= 8`); `trials` is
    /// then ignored.
    pub exhaustive: bool,
}

impl TrialConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            jobs: None,
            exhaustive: false,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }

    pub fn exhaustive(mut self) -> Self {
        self.exhaustive = true;
        self
    }
}

/// Independent generators for trial `index`: one for the arrival order and
/// one for the algorithm's coin. They depend only on `(seed, index)`.
pub fn trial_rngs(seed: u64, index: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    let base = ChaCha8Rng::seed_from_u64(seed);
    let mut order = base.clone();
    order.set_stream(2 * index);
    let mut coin = base;
    coin.set_stream(2 * index + 1);
    (order, coin)
}

pub(crate) fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidArgument("jobs must be >= 1".into())),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot start {j} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs `algorithm` over independent uniformly random arrival orders (or
/// all orders in exhaustive mode) and aggregates the outcomes. The result is
/// bit-identical for a fixed `(instance, algorithm, config)` whatever the
/// worker count.
pub fn run_trials(instance: &Instance, algorithm: &dyn OnlineAlgorithm, config: &TrialConfig) -> Result<TrialStats> {
    let n = instance.len();
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if !config.exhaustive && config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if config.exhaustive && n > EXHAUSTIVE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "exhaustive mode enumerates n! orders and supports n <= {EXHAUSTIVE_MAX_N}, got {n}"
        )));
    }

    let target = best_k_subset(instance.items(), algorithm.target_size());
    let mut slot = vec![u32::MAX; n];
    for (rank, item) in target.iter().enumerate() {
        slot[item.id] = rank as u32;
    }
    let record = |index: u64, order: ArrivalOrder| -> Result<TrialRecord> {
        let (_, mut coin) = trial_rngs(config.seed, index);
        let outcome = algorithm.run(instance, &order, &mut coin)?;
        let target_hits = outcome
            .selected
            .iter()
            .map(|s| slot[s.item])
            .filter(|&r| r != u32::MAX)
            .collect();
        Ok(TrialRecord {
            value: outcome.total_value,
            weight: outcome.total_weight,
            count: outcome.count(),
            target_hits,
        })
    };

    let mut acc = StatsAccumulator::new(target.len());
    with_pool(config.jobs, || -> Result<()> {
        if config.exhaustive {
            let orders = all_permutations(n);
            let records = orders
                .into_par_iter()
                .enumerate()
                .map(|(i, ids)| record(i as u64, ArrivalOrder::new(ids)?))
                .collect::<Result<Vec<_>>>()?;
            records.iter().for_each(|r| acc.push(r));
        } else {
            let mut start = 0;
            while start < config.trials {
                let end = (start + CHUNK).min(config.trials);
                let records = (start..end)
                    .into_par_iter()
                    .map(|i| {
                        let (mut order_rng, _) = trial_rngs(config.seed, i);
                        record(i, ArrivalOrder::shuffled(n, &mut order_rng))
                    })
                    .collect::<Result<Vec<_>>>()?;
                records.iter().for_each(|r| acc.push(r));
                start = end;
            }
        }
        Ok(())
    })??;
    Ok(acc.finish())
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Count histogram of the t-Threshold rule on `n` distinct values.
pub fn selection_histogram(n: usize, t: usize, config: &TrialConfig) -> Result<TrialStats> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    run_trials(&Instance::ranked(n), &TThreshold { t: Some(t) }, config)
}
