//! Unit-weight selection: the t-Threshold rule, its k-item generalization and
//! the classical stop-at-first-pick baseline.
//!
//! All three observe the first `t` arrivals without selecting and make
//! decisions at positions `t + 1..=n`. "Better" always means the (value, -id)
//! lexicographic order of [`Item::beats`], so runs are deterministic under
//! tied values.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::model::{Item, RunOutcome};

/// Observation length `t` and selection budget `k` for the threshold rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdConfig {
    pub n: usize,
    pub t: usize,
    pub k: usize,
}

impl ThresholdConfig {
    pub fn new(n: usize, t: usize, k: usize) -> Result<Self> {
        if t > n {
            return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        Ok(Self { n, t, k })
    }

    /// `t = floor(n / e)`, `k = 1`.
    pub fn with_default_t(n: usize) -> Self {
        Self {
            n,
            t: default_threshold(n),
            k: 1,
        }
    }
}

/// `floor(n / e)`.
pub fn default_threshold(n: usize) -> usize {
    (n as f64 / E).floor() as usize
}

/// `floor(n / e) + 1`, capped at `n`; the convention used for the
/// count-histogram experiment.
pub fn histogram_threshold(n: usize) -> usize {
    (default_threshold(n) + 1).min(n)
}

/// t-Threshold over items given in arrival order: skip the first `t`, then
/// select every arrival that beats the best item seen so far.
pub fn t_threshold<'a, I>(arrivals: I, t: usize) -> RunOutcome
where
    I: IntoIterator<Item = &'a Item>,
{
    let mut out = RunOutcome::empty();
    let mut best: Option<&Item> = None;
    for (idx, item) in arrivals.into_iter().enumerate() {
        let position = idx + 1;
        let better = best.is_none_or(|b| item.beats(b));
        if position > t && better {
            out.push(position, item);
        }
        if better {
            best = Some(item);
        }
    }
    out
}

/// Classical secretary rule: the first post-observation arrival beating
/// everything before it is selected and the run stops.
pub fn classical_secretary<'a, I>(arrivals: I, t: usize) -> RunOutcome
where
    I: IntoIterator<Item = &'a Item>,
{
    let mut out = RunOutcome::empty();
    let mut best: Option<&Item> = None;
    for (idx, item) in arrivals.into_iter().enumerate() {
        let position = idx + 1;
        let better = best.is_none_or(|b| item.beats(b));
        if position > t && better {
            out.push(position, item);
            break;
        }
        if better {
            best = Some(item);
        }
    }
    out
}

/// Heap key ordering items by (value, -id).
#[derive(Debug, Clone, Copy)]
struct Ranked(Item);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.value_order(&other.0)
    }
}

/// K-Sec t-Threshold. The reference set holds the best `k` items seen; an
/// arrival after position `t` is selected iff it beats the k-th best member,
/// which then leaves the set. While the set holds fewer than `k` items its
/// k-th member counts as minus infinity.
pub fn ksec_t_threshold<'a, I>(arrivals: I, k: usize, t: usize) -> RunOutcome
where
    I: IntoIterator<Item = &'a Item>,
{
    assert!(k >= 1, "k must be >= 1");
    let mut out = RunOutcome::empty();
    // min-heap: the root is r_k, the weakest member
    let mut reference: BinaryHeap<Reverse<Ranked>> = BinaryHeap::with_capacity(k + 1);
    for (idx, item) in arrivals.into_iter().enumerate() {
        let position = idx + 1;
        if position <= t {
            reference.push(Reverse(Ranked(*item)));
            if reference.len() > k {
                reference.pop();
            }
            continue;
        }
        let beats_rk = match reference.peek() {
            _ if reference.len() < k => true,
            Some(Reverse(Ranked(rk))) => item.beats(rk),
            None => true,
        };
        if beats_rk {
            out.push(position, item);
            if reference.len() == k {
                reference.pop();
            }
            reference.push(Reverse(Ranked(*item)));
        }
    }
    out
}

fn items_from_values(values: &[f64]) -> Result<Vec<Item>> {
    if values.is_empty() {
        return Err(Error::EmptyInstance);
    }
    Ok(values
        .iter()
        .enumerate()
        .map(|(id, &value)| Item {
            id,
            value,
            weight: 1.0,
        })
        .collect())
}

fn check_t(t: usize, n: usize) -> Result<()> {
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    Ok(())
}

/// [`t_threshold`] on raw values listed in arrival order (item id = index).
pub fn t_threshold_run(values: &[f64], t: usize) -> Result<RunOutcome> {
    let items = items_from_values(values)?;
    check_t(t, items.len())?;
    Ok(t_threshold(&items, t))
}

/// [`classical_secretary`] on raw values listed in arrival order.
pub fn classical_secretary_run(values: &[f64], t: usize) -> Result<RunOutcome> {
    let items = items_from_values(values)?;
    check_t(t, items.len())?;
    Ok(classical_secretary(&items, t))
}

/// [`ksec_t_threshold`] on raw values listed in arrival order.
pub fn ksec_t_threshold_run(values: &[f64], k: usize, t: usize) -> Result<RunOutcome> {
    let items = items_from_values(values)?;
    check_t(t, items.len())?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(ksec_t_threshold(&items, k, t))
}

/// Expected number of selections `k * sum_{l=t+1}^{n} 1/l` under a uniform
/// arrival order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountBound {
    pub expected: f64,
    /// `false` when `t = 0`: nothing is observed and the `<= k` capacity
    /// guarantee does not apply.
    pub capacity_guarantee: bool,
}

pub fn expected_count_bound(n: usize, t: usize, k: usize) -> Result<CountBound> {
    check_t(t, n)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(CountBound {
        expected: k as f64 * harmonic_range(t + 1, n),
        capacity_guarantee: t >= 1,
    })
}

/// `sum_{l=from}^{to} 1/l`, summed smallest terms first.
pub fn harmonic_range(from: usize, to: usize) -> f64 {
    (from.max(1)..=to).rev().map(|l| 1.0 / l as f64).sum()
}
