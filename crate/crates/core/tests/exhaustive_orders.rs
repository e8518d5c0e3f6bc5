//! Exact checks over all n! arrival orders with rational arithmetic.

use expknap_core::algorithm::{KSecThreshold, TThreshold};
use expknap_core::harness::{run_trials, selection_histogram, TrialConfig};
use expknap_core::model::{ArrivalOrder, Instance};
use expknap_core::secretary::t_threshold;
use itertools::Itertools;
use num_rational::Ratio;

type Q = Ratio<u64>;

fn harmonic(from: usize, to: usize) -> Q {
    (from..=to).map(|l| Q::new(1, l as u64)).sum()
}

/// Counts (successes, total selections, per-position selections) over every
/// order by direct enumeration, independent of the harness.
fn enumerate(n: usize, t: usize) -> (u64, u64, Vec<u64>) {
    let inst = Instance::ranked(n);
    let best = inst.best_item().unwrap().id;
    let (mut successes, mut total) = (0, 0);
    let mut per_position = vec![0u64; n + 1];
    for perm in (0..n).permutations(n) {
        let order = ArrivalOrder::new(perm).unwrap();
        let out = t_threshold(inst.arrivals(&order), t);
        successes += out.contains_item(best) as u64;
        total += out.count() as u64;
        for p in out.positions() {
            per_position[p] += 1;
        }
    }
    (successes, total, per_position)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[test]
fn secretary_success_and_count_are_exact() {
    for n in 1..=8 {
        for t in 0..=n {
            let (successes, total, per_position) = enumerate(n, t);
            let orders = factorial(n);
            let success = Q::new(successes, orders);
            let count = Q::new(total, orders);
            let expected_success = if t == 0 { Q::from_integer(1) } else { Q::new((n - t) as u64, n as u64) };
            assert_eq!(success, expected_success, "n={n} t={t}");
            let expected_count = if t == 0 { harmonic(1, n) } else { harmonic(t + 1, n) };
            assert_eq!(count, expected_count, "n={n} t={t}");
            for (l, &c) in per_position.iter().enumerate().skip(t.max(1) + 1) {
                assert_eq!(Q::new(c, orders), Q::new(1, l as u64), "n={n} t={t} l={l}");
            }

            let stats = run_trials(&Instance::ranked(n), &TThreshold { t: Some(t) }, &TrialConfig::new(1, 0).exhaustive())
                .unwrap();
            assert_eq!(stats.trials, orders);
            assert_eq!(stats.success_trials, successes);
            assert_eq!(stats.total_count, total);
        }
    }
}

#[test]
fn eight_items_two_observed_succeeds_six_eighths() {
    let stats = run_trials(&Instance::ranked(8), &TThreshold { t: Some(2) }, &TrialConfig::new(1, 0).exhaustive()).unwrap();
    assert_eq!(Q::new(stats.success_trials, stats.trials), Q::new(6, 8));
}

#[test]
fn ksec_position_frequencies_are_k_over_l() {
    let (n, k) = (7, 3);
    for t in k..=n {
        let stats = run_trials(
            &Instance::ranked(n),
            &KSecThreshold { k, t: Some(t) },
            &TrialConfig::new(1, 0).exhaustive(),
        )
        .unwrap();
        let expected = harmonic(t + 1, n) * Q::from_integer(k as u64);
        assert_eq!(Q::new(stats.total_count, stats.trials), expected, "t={t}");
    }
}

#[test]
fn exhaustive_histogram_mean_is_harmonic() {
    let stats = selection_histogram(8, 3, &TrialConfig::new(1, 0).exhaustive()).unwrap();
    let mass: u64 = stats.histogram.iter().map(|(&c, &m)| c as u64 * m).sum();
    assert_eq!(Q::new(mass, stats.trials), harmonic(4, 8));
}
