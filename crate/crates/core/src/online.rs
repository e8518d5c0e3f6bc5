//! Online knapsack with augmented capacity (`AUG-ON`) and its randomized
//! wrapper `ON` that meets a unit capacity in expectation.
//!
//! `AUG-ON` watches the first `t` arrivals, runs [`off_greedy_items`] on them
//! with capacity `C`, and seeds a reference set `R` with the `k` items `OFF`
//! kept. During the decision phase an arrival whose buck-per-bang beats the
//! worst member `i_k` of `R` replaces `i_k`; it is *selected* only if `i_k`
//! came from the observation phase and the newcomer is no heavier. Every
//! observation-phase member is thus weighed against at most one selection,
//! which keeps the selected weight within the weight `OFF` used, hence
//! within `C`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::generator::ItemSampler;
use crate::model::{ArrivalOrder, Instance, Item, RunOutcome};
use crate::offline::{off_greedy_items, EPS};
use crate::secretary::default_threshold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Origin {
    OfflinePhase,
    DecisionPhase,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceEntry {
    pub item: Item,
    pub origin: Origin,
}

/// What happened to one decision-phase arrival.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    /// Entered `R` and was selected.
    Selected,
    /// Entered `R` without being selected.
    Replaced,
    /// Did not beat `i_k`; `R` unchanged.
    Ignored,
}

/// Checks the capacity range `(1, 2]` required by `AUG-ON` and `ON`.
pub fn check_augmented_capacity(capacity: f64) -> Result<()> {
    if capacity > 1.0 && capacity <= 2.0 {
        Ok(())
    } else {
        Err(Error::CapacityDomain {
            capacity,
            range: "(1, 2]",
        })
    }
}

/// Decision-phase state of `AUG-ON`.
#[derive(Debug, Clone)]
pub struct AugOnState {
    capacity: f64,
    /// Ascending (buck-per-bang, id); the last entry is `i_k`.
    reference: Vec<ReferenceEntry>,
    b_threshold: f64,
    outcome: RunOutcome,
    /// Observation-phase items whose weight has been compared, in order.
    compared: Vec<usize>,
}

impl AugOnState {
    /// Runs `OFF` on the observed prefix and seeds the reference set.
    pub fn from_offline_phase<'a, I>(prefix: I, capacity: f64) -> Self
    where
        I: IntoIterator<Item = &'a Item>,
    {
        let off = off_greedy_items(prefix, capacity);
        let reference = off
            .selected
            .iter()
            .map(|&item| ReferenceEntry {
                item,
                origin: Origin::OfflinePhase,
            })
            .collect();
        Self {
            capacity,
            reference,
            b_threshold: off.b_star,
            outcome: RunOutcome::empty(),
            compared: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.reference.len()
    }

    /// `b*_{1/2}`: the threshold `OFF` produced on the observed prefix.
    pub fn b_threshold(&self) -> f64 {
        self.b_threshold
    }

    pub fn reference(&self) -> &[ReferenceEntry] {
        &self.reference
    }

    /// The worst reference member `i_k`.
    pub fn worst(&self) -> Option<&ReferenceEntry> {
        self.reference.last()
    }

    pub fn outcome(&self) -> &RunOutcome {
        &self.outcome
    }

    pub fn into_outcome(self) -> RunOutcome {
        self.outcome
    }

    /// Ids of observation-phase members whose weight was compared, one entry
    /// per comparison.
    pub fn compared_offline_items(&self) -> &[usize] {
        &self.compared
    }

    /// Processes the arrival at 1-based `position` (must be past the
    /// observation phase).
    pub fn offer(&mut self, position: usize, item: &Item) -> Decision {
        let Some(worst) = self.reference.last().copied() else {
            return Decision::Ignored;
        };
        if item.buck_per_bang() >= worst.item.buck_per_bang() {
            return Decision::Ignored;
        }
        let mut decision = Decision::Replaced;
        if worst.origin == Origin::OfflinePhase {
            self.compared.push(worst.item.id);
            if item.weight <= worst.item.weight {
                self.outcome.push(position, item);
                decision = Decision::Selected;
            }
        }
        self.reference.pop();
        let entry = ReferenceEntry {
            item: *item,
            origin: Origin::DecisionPhase,
        };
        let at = self
            .reference
            .partition_point(|e| e.item.bpb_order(item).is_lt());
        self.reference.insert(at, entry);
        debug_assert!(
            self.outcome.total_weight <= self.capacity + EPS,
            "selected weight {} exceeds capacity {}",
            self.outcome.total_weight,
            self.capacity
        );
        decision
    }
}

/// Result of one `AUG-ON` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AugOnRun {
    pub outcome: RunOutcome,
    /// `|R|`; zero means the observation phase yielded no reference items
    /// and nothing could be selected.
    pub k: usize,
    pub b_threshold: f64,
}

impl AugOnRun {
    pub fn empty_reference(&self) -> bool {
        self.k == 0
    }
}

fn check_order(instance: &Instance, order: &ArrivalOrder) -> Result<()> {
    if instance.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if order.len() != instance.len() {
        return Err(Error::InvalidArgument(format!(
            "arrival order has {} entries for {} items",
            order.len(),
            instance.len()
        )));
    }
    Ok(())
}

/// `AUG-ON` with observation length `t` and augmented capacity `C` in `(1, 2]`.
pub fn aug_on_run(instance: &Instance, order: &ArrivalOrder, capacity: f64, t: usize) -> Result<AugOnRun> {
    check_augmented_capacity(capacity)?;
    check_order(instance, order)?;
    if t > instance.len() {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {}", instance.len())));
    }
    let ids = order.ids();
    let mut state = AugOnState::from_offline_phase(ids[..t].iter().map(|&id| instance.item(id)), capacity);
    let k = state.k();
    let b_threshold = state.b_threshold();
    for (offset, &id) in ids[t..].iter().enumerate() {
        state.offer(t + offset + 1, instance.item(id));
    }
    Ok(AugOnRun {
        outcome: state.into_outcome(),
        k,
        b_threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OnRun {
    /// Whether the coin activated `AUG-ON`.
    pub activated: bool,
    pub outcome: RunOutcome,
}

/// `ON`: with probability `1 / C` run `AUG-ON` at capacity `C` with
/// `t = floor(n / e)`, otherwise select nothing. `C = 2` is the fair coin.
pub fn on_run_with<R: Rng + ?Sized>(
    instance: &Instance,
    order: &ArrivalOrder,
    capacity: f64,
    coin: &mut R,
) -> Result<OnRun> {
    check_augmented_capacity(capacity)?;
    check_order(instance, order)?;
    if coin.gen_bool(1.0 / capacity) {
        let run = aug_on_run(instance, order, capacity, default_threshold(instance.len()))?;
        Ok(OnRun {
            activated: true,
            outcome: run.outcome,
        })
    } else {
        Ok(OnRun {
            activated: false,
            outcome: RunOutcome::empty(),
        })
    }
}

/// [`on_run_with`] with the coin drawn from `coin_seed`.
pub fn on_run(instance: &Instance, order: &ArrivalOrder, capacity: f64, coin_seed: u64) -> Result<OnRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(coin_seed);
    on_run_with(instance, order, capacity, &mut rng)
}

/// Empirical `P(w(i) > w(j) | b(i) > b(j))` over `samples` independent item
/// pairs; pairs with equal buck-per-bang are skipped.
pub fn assumption1_check(generator: &dyn ItemSampler, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comparable = 0usize;
    let mut heavier = 0usize;
    for _ in 0..samples {
        let a = generator.sample_item(0, &mut rng);
        let b = generator.sample_item(1, &mut rng);
        let (hi, lo) = match a.buck_per_bang().total_cmp(&b.buck_per_bang()) {
            std::cmp::Ordering::Greater => (a, b),
            std::cmp::Ordering::Less => (b, a),
            std::cmp::Ordering::Equal => continue,
        };
        comparable += 1;
        if hi.weight > lo.weight {
            heavier += 1;
        }
    }
    if comparable == 0 {
        return Err(Error::DegenerateGenerator { samples });
    }
    Ok(heavier as f64 / comparable as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Item with buck-per-bang `b` and weight `w`.
    fn bw(id: usize, b: f64, w: f64) -> Item {
        Item::new(id, w / b, w).unwrap()
    }

    fn bpbs(state: &AugOnState) -> Vec<f64> {
        state
            .reference()
            .iter()
            .map(|e| (e.item.buck_per_bang() * 1e9).round() / 1e9)
            .collect()
    }

    #[test]
    fn worked_example_trace() {
        let offline = [bw(0, 7.0, 0.5), bw(1, 8.0, 0.5), bw(2, 9.0, 0.5), bw(3, 10.0, 0.4)];
        let mut state = AugOnState::from_offline_phase(&offline, 2.0);
        assert_eq!(state.k(), 4);
        assert_eq!(bpbs(&state), vec![7.0, 8.0, 9.0, 10.0]);

        assert_eq!(state.offer(5, &bw(4, 8.5, 0.35)), Decision::Selected);
        assert_eq!(bpbs(&state), vec![7.0, 8.0, 8.5, 9.0]);

        assert_eq!(state.offer(6, &bw(5, 9.5, 0.1)), Decision::Ignored);
        assert_eq!(bpbs(&state), vec![7.0, 8.0, 8.5, 9.0]);

        assert_eq!(state.offer(7, &bw(6, 7.5, 0.45)), Decision::Selected);
        assert_eq!(bpbs(&state), vec![7.0, 7.5, 8.0, 8.5]);

        // i_k (8.5) arrived in the decision phase: R moves, nothing is selected
        assert_eq!(state.offer(8, &bw(7, 7.2, 0.01)), Decision::Replaced);
        assert_eq!(bpbs(&state), vec![7.0, 7.2, 7.5, 8.0]);

        assert_eq!(state.outcome().positions(), vec![5, 7]);
        assert!((state.outcome().total_weight - 0.8).abs() < 1e-12);
        assert_eq!(state.compared_offline_items(), &[3, 2]);
    }

    #[test]
    fn heavier_newcomer_replaces_without_selection() {
        let offline = [bw(0, 1.0, 0.5), bw(1, 2.0, 0.3)];
        let mut state = AugOnState::from_offline_phase(&offline, 2.0);
        assert_eq!(state.offer(3, &bw(2, 1.5, 0.31)), Decision::Replaced);
        assert_eq!(state.outcome().count(), 0);
        assert_eq!(state.worst().unwrap().origin, Origin::DecisionPhase);
        // equal weight is accepted
        let mut state = AugOnState::from_offline_phase(&offline, 2.0);
        assert_eq!(state.offer(3, &bw(2, 1.5, 0.3)), Decision::Selected);
    }

    #[test]
    fn empty_decision_phase_and_empty_reference() {
        let inst = Instance::from_pairs(&[(1.0, 0.5), (2.0, 0.5), (3.0, 0.5)]).unwrap();
        let order = ArrivalOrder::identity(3);
        let run = aug_on_run(&inst, &order, 2.0, 3).unwrap();
        assert_eq!(run.outcome, RunOutcome::empty());

        let run = aug_on_run(&inst, &order, 2.0, 0).unwrap();
        assert!(run.empty_reference());
        assert_eq!(run.outcome.count(), 0);

        assert!(aug_on_run(&inst, &order, 2.0, 4).is_err());
        assert!(matches!(aug_on_run(&inst, &order, 1.0, 1), Err(Error::CapacityDomain { .. })));
        assert!(aug_on_run(&inst, &ArrivalOrder::identity(2), 2.0, 1).is_err());
    }

    #[test]
    fn on_branches() {
        let pairs: Vec<(f64, f64)> = (0..30).map(|i| (1.0 + (i * 7 % 11) as f64, 0.1 + (i * 3 % 9) as f64 / 10.0)).collect();
        let inst = Instance::from_pairs(&pairs).unwrap();
        let order = crate::model::random_permutation(30, 4).unwrap();
        let direct = aug_on_run(&inst, &order, 2.0, default_threshold(30)).unwrap();
        let mut heads = 0;
        for seed in 0..200 {
            let run = on_run(&inst, &order, 2.0, seed).unwrap();
            if run.activated {
                heads += 1;
                assert_eq!(run.outcome, direct.outcome);
            } else {
                assert_eq!(run.outcome, RunOutcome::empty());
                assert_eq!(run.outcome.total_weight, 0.0);
            }
        }
        assert!(heads > 60 && heads < 140, "heads = {heads}");
    }
}
