//! Domain types shared by every algorithm: items, instances, arrival orders
//! and per-run outcomes.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One selectable unit with value `v(i) > 0` and weight `w(i)` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub id: usize,
    pub value: f64,
    pub weight: f64,
}

impl Item {
    pub fn new(id: usize, value: f64, weight: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidItem {
                id,
                reason: format!("value must be finite and > 0, got {value}"),
            });
        }
        if !weight.is_finite() || weight <= 0.0 || weight > 1.0 {
            return Err(Error::InvalidItem {
                id,
                reason: format!("weight must lie in (0, 1], got {weight}"),
            });
        }
        Ok(Self { id, value, weight })
    }

    /// Weight-to-value ratio `w(i) / v(i)`; lower is better.
    #[inline]
    pub fn buck_per_bang(&self) -> f64 {
        self.weight / self.value
    }

    /// `true` when `self` ranks strictly above `other` in the (value, -id)
    /// lexicographic order used for every "best so far" comparison.
    #[inline]
    pub fn beats(&self, other: &Item) -> bool {
        self.value_order(other) == Ordering::Greater
    }

    /// Total order on (value, -id): larger value first, then smaller id.
    #[inline]
    pub fn value_order(&self, other: &Item) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| other.id.cmp(&self.id))
    }

    /// Total order on (buck-per-bang, id), ascending.
    #[inline]
    pub fn bpb_order(&self, other: &Item) -> Ordering {
        self.buck_per_bang()
            .total_cmp(&other.buck_per_bang())
            .then_with(|| self.id.cmp(&other.id))
    }
}

/// Free-function form of [`Item::buck_per_bang`] that re-checks the value.
pub fn buck_per_bang(item: &Item) -> Result<f64> {
    if item.value <= 0.0 {
        return Err(Error::InvalidItem {
            id: item.id,
            reason: "buck-per-bang undefined for zero value".into(),
        });
    }
    Ok(item.buck_per_bang())
}

/// The full item set. Item `i` is stored at index `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    items: Vec<Item>,
}

impl Instance {
    /// Validates every item and requires ids to be exactly `0..n` in order.
    pub fn new(items: Vec<Item>) -> Result<Self> {
        for (idx, item) in items.iter().enumerate() {
            if item.id != idx {
                return Err(Error::Validation(format!(
                    "item at index {idx} has id {}; ids must be 0..n in order",
                    item.id
                )));
            }
            Item::new(item.id, item.value, item.weight)?;
        }
        Ok(Self { items })
    }

    /// Builds an instance from `(value, weight)` pairs, assigning ids in order.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let items = pairs
            .iter()
            .enumerate()
            .map(|(id, &(v, w))| Item::new(id, v, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { items })
    }

    /// Unit-weight instance for the secretary variants.
    pub fn unit_weight(values: &[f64]) -> Result<Self> {
        let pairs: Vec<_> = values.iter().map(|&v| (v, 1.0)).collect();
        Self::from_pairs(&pairs)
    }

    /// Unit-weight instance with distinct values `1, 2, ..., n`.
    pub fn ranked(n: usize) -> Self {
        let items = (0..n)
            .map(|id| Item {
                id,
                value: (id + 1) as f64,
                weight: 1.0,
            })
            .collect();
        Self { items }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn item(&self, id: usize) -> &Item {
        &self.items[id]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total_value(&self) -> f64 {
        self.items.iter().map(|i| i.value).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.items.iter().map(|i| i.weight).sum()
    }

    /// The item ranked first in (value, -id) order.
    pub fn best_item(&self) -> Option<&Item> {
        self.items.iter().max_by(|a, b| a.value_order(b))
    }

    /// Items in arrival order.
    pub fn arrivals<'a>(&'a self, order: &'a ArrivalOrder) -> impl Iterator<Item = &'a Item> + 'a {
        order.ids().iter().map(move |&id| &self.items[id])
    }
}

/// A permutation of item ids; `ids()[p]` is the item arriving at position `p + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrivalOrder {
    ids: Vec<usize>,
}

impl ArrivalOrder {
    pub fn new(ids: Vec<usize>) -> Result<Self> {
        let n = ids.len();
        let mut seen = vec![false; n];
        for &id in &ids {
            if id >= n {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("id {id} out of range"),
                });
            }
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("id {id} repeated"),
                });
            }
        }
        Ok(Self { ids })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ids: (0..n).collect(),
        }
    }

    /// Uniform shuffle driven by `rng`.
    pub fn shuffled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        Self { ids }
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        Self::new(self.ids.clone()).is_ok()
    }
}

/// Uniformly random arrival order of `n` items, fully determined by `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Result<ArrivalOrder> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ArrivalOrder::shuffled(n, &mut rng))
}

/// One irrevocable selection: the 1-based arrival position and the item id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub position: usize,
    pub item: usize,
}

/// What one run of an online algorithm picked.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunOutcome {
    pub selected: Vec<Selection>,
    pub total_value: f64,
    pub total_weight: f64,
}

impl RunOutcome {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Records a selection. Positions must arrive strictly increasing.
    pub fn push(&mut self, position: usize, item: &Item) {
        debug_assert!(self
            .selected
            .last()
            .is_none_or(|last| last.position < position));
        self.selected.push(Selection {
            position,
            item: item.id,
        });
        self.total_value += item.value;
        self.total_weight += item.weight;
    }

    pub fn count(&self) -> usize {
        self.selected.len()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.selected.iter().map(|s| s.position).collect()
    }

    pub fn contains_item(&self, id: usize) -> bool {
        self.selected.iter().any(|s| s.item == id)
    }
}

/// The `min(k, n)` items of largest value, best first; ties go to the smaller id.
pub fn best_k_subset(items: &[Item], k: usize) -> Vec<Item> {
    let mut sorted = items.to_vec();
    sorted.sort_by(|a, b| b.value_order(a));
    sorted.truncate(k);
    sorted
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buck_per_bang_examples() {
        let cases = [((2.0, 1.0), 0.5), ((1.0, 1.0), 1.0), ((10.0, 0.8), 0.08)];
        for ((v, w), expected) in cases {
            let item = Item::new(0, v, w).unwrap();
            assert!((buck_per_bang(&item).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn buck_per_bang_rejects_zero_value() {
        let item = Item {
            id: 3,
            value: 0.0,
            weight: 0.5,
        };
        assert!(buck_per_bang(&item).is_err());
        assert!(Item::new(3, 0.0, 0.5).is_err());
    }

    #[test]
    fn item_weight_bounds() {
        assert!(Item::new(0, 1.0, 0.0).is_err());
        assert!(Item::new(0, 1.0, 1.0 + 1e-12).is_err());
        assert!(Item::new(0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn instance_requires_ordered_ids() {
        let a = Item::new(1, 1.0, 0.5).unwrap();
        let b = Item::new(0, 1.0, 0.5).unwrap();
        assert!(Instance::new(vec![a, b]).is_err());
        assert!(Instance::new(vec![b, a]).is_ok());
        assert!(Instance::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn permutation_single_and_determinism() {
        assert_eq!(random_permutation(1, 99).unwrap().ids(), &[0]);
        let a = random_permutation(3, 5).unwrap();
        let b = random_permutation(3, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.is_bijective());
        assert!(matches!(random_permutation(0, 1), Err(Error::EmptyInstance)));
    }

    #[test]
    fn arrival_order_rejects_non_bijection() {
        assert!(ArrivalOrder::new(vec![0, 0, 1]).is_err());
        assert!(ArrivalOrder::new(vec![0, 3, 1]).is_err());
        assert!(ArrivalOrder::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn best_k_examples() {
        let inst = Instance::unit_weight(&[3.0, 1.0, 4.0]).unwrap();
        let top: Vec<f64> = best_k_subset(inst.items(), 2).iter().map(|i| i.value).collect();
        assert_eq!(top, vec![4.0, 3.0]);
        assert!(best_k_subset(inst.items(), 0).is_empty());
        assert_eq!(best_k_subset(inst.items(), 10).len(), 3);

        let tied = Instance::unit_weight(&[5.0, 5.0, 2.0]).unwrap();
        let top = best_k_subset(tied.items(), 1);
        assert_eq!(top[0].id, 0);
    }

    #[test]
    fn run_outcome_sums() {
        let inst = Instance::from_pairs(&[(2.0, 0.5), (3.0, 0.25)]).unwrap();
        let mut out = RunOutcome::empty();
        out.push(1, inst.item(1));
        out.push(4, inst.item(0));
        assert_eq!(out.count(), 2);
        assert_eq!(out.total_value, 5.0);
        assert_eq!(out.total_weight, 0.75);
        assert_eq!(out.positions(), vec![1, 4]);
    }
}
