use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Aggregated Monte-Carlo estimates over `trials` runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: u64,
    pub mean_value: f64,
    pub mean_count: f64,
    pub mean_weight: f64,
    /// Fraction of trials that selected every item of the target set (the
    /// best item, or the best `k` items for the k-item rule).
    pub success_rate: f64,
    pub std_error_value: f64,
    pub std_error_count: f64,
    pub std_error_weight: f64,
    pub std_error_success: f64,
    pub success_trials: u64,
    /// Sum of selection counts over all trials.
    pub total_count: u64,
    /// Selection frequency of each target item, best first.
    pub target_frequency: Vec<f64>,
    /// Number of trials that selected exactly `count` items.
    pub histogram: BTreeMap<usize, u64>,
}

/// One finished trial, reduced to what the aggregate needs.
#[derive(Debug, Clone, Default)]
pub struct TrialRecord {
    pub value: f64,
    pub weight: f64,
    pub count: usize,
    /// Indices into the target set of the target items that were selected.
    pub target_hits: Vec<u32>,
}

/// Order-sensitive but deterministic accumulator; records must be fed in
/// trial-index order for reproducible floating-point results.
#[derive(Debug, Clone)]
pub struct StatsAccumulator {
    trials: u64,
    target_size: usize,
    value: CompensatedSum,
    value_sq: CompensatedSum,
    weight: CompensatedSum,
    weight_sq: CompensatedSum,
    count: u64,
    count_sq: u128,
    successes: u64,
    target_hits: Vec<u64>,
    histogram: BTreeMap<usize, u64>,
}

impl StatsAccumulator {
    pub fn new(target_size: usize) -> Self {
        Self {
            trials: 0,
            target_size,
            value: CompensatedSum::default(),
            value_sq: CompensatedSum::default(),
            weight: CompensatedSum::default(),
            weight_sq: CompensatedSum::default(),
            count: 0,
            count_sq: 0,
            successes: 0,
            target_hits: vec![0; target_size],
            histogram: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, record: &TrialRecord) {
        self.trials += 1;
        self.value.add(record.value);
        self.value_sq.add(record.value * record.value);
        self.weight.add(record.weight);
        self.weight_sq.add(record.weight * record.weight);
        self.count += record.count as u64;
        self.count_sq += (record.count as u128).pow(2);
        for &hit in &record.target_hits {
            self.target_hits[hit as usize] += 1;
        }
        if record.target_hits.len() == self.target_size {
            self.successes += 1;
        }
        *self.histogram.entry(record.count).or_default() += 1;
    }

    pub fn finish(self) -> TrialStats {
        let n = self.trials as f64;
        let mean = |s: f64| if self.trials == 0 { 0.0 } else { s / n };
        let std_error = |sum: f64, sum_sq: f64| {
            if self.trials < 2 {
                return 0.0;
            }
            let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        };
        let count = self.count as f64;
        let successes = self.successes as f64;
        TrialStats {
            trials: self.trials,
            mean_value: mean(self.value.value()),
            mean_count: mean(count),
            mean_weight: mean(self.weight.value()),
            success_rate: mean(successes),
            std_error_value: std_error(self.value.value(), self.value_sq.value()),
            std_error_count: std_error(count, self.count_sq as f64),
            std_error_weight: std_error(self.weight.value(), self.weight_sq.value()),
            // indicator variable: sum of squares equals the sum
            std_error_success: std_error(successes, successes),
            success_trials: self.successes,
            total_count: self.count,
            target_frequency: self.target_hits.iter().map(|&h| mean(h as f64)).collect(),
            histogram: self.histogram,
        }
    }
}

impl TrialStats {
    /// Share of trials selecting at least `count` items.
    pub fn frequency_at_least(&self, count: usize) -> f64 {
        let hits: u64 = self.histogram.range(count..).map(|(_, &c)| c).sum();
        hits as f64 / self.trials as f64
    }
}
