//! Offline knapsack: the fractional LP optimum, the augmented-capacity
//! prefix greedy `OFF`, and an exact 0/1 oracle.
//!
//! Items are always ranked by ascending buck-per-bang with ties broken by the
//! smaller id. Capacity and value comparisons use the absolute tolerance
//! [`EPS`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, Item};

/// Absolute tolerance for capacity and value comparisons.
pub const EPS: f64 = 1e-9;

/// Largest `n` for which [`integral_opt`] enumerates subsets exactly.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Upper bound on `n * (capacity units + 1)` for the quantized DP.
pub const DP_CELL_LIMIT: u128 = 1_000_000_000;

/// Ids of `items` sorted by ascending (buck-per-bang, id).
pub fn bpb_sorted<'a, I>(items: I) -> Vec<&'a Item>
where
    I: IntoIterator<Item = &'a Item>,
{
    let mut sorted: Vec<&Item> = items.into_iter().collect();
    sorted.sort_by(|a, b| a.bpb_order(b));
    sorted
}

/// Optimal solution of the LP relaxation at capacity `C`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractionalSolution {
    /// `x[i]` in `[0, 1]`, indexed by item id.
    pub x: Vec<f64>,
    pub value: f64,
    pub capacity_used: f64,
}

impl FractionalSolution {
    /// Number of items taken strictly between 0 and 1.
    pub fn fractional_count(&self) -> usize {
        self.x.iter().filter(|&&x| x > 0.0 && x < 1.0).count()
    }
}

/// Greedy by ascending buck-per-bang: whole items while they fit, then one
/// fractional item filling the residual capacity exactly.
pub fn fractional_opt(instance: &Instance, capacity: f64) -> Result<FractionalSolution> {
    if capacity.is_nan() || capacity <= 0.0 {
        return Err(Error::InvalidArgument(format!("capacity must be > 0, got {capacity}")));
    }
    let mut x = vec![0.0; instance.len()];
    let mut remaining = capacity;
    let mut value = 0.0;
    let mut used = 0.0;
    for item in bpb_sorted(instance.items()) {
        if remaining <= 0.0 {
            break;
        }
        if item.weight <= remaining {
            x[item.id] = 1.0;
            remaining -= item.weight;
            value += item.value;
            used += item.weight;
        } else {
            let frac = remaining / item.weight;
            x[item.id] = frac;
            value += frac * item.value;
            used += remaining;
            break;
        }
    }
    Ok(FractionalSolution {
        x,
        value,
        capacity_used: used,
    })
}

/// Checks the threshold structure of a fractional assignment: walking items
/// by ascending buck-per-bang, `x` reads 1,...,1, at most one value in
/// `(0, 1)`, then 0,...,0.
pub fn has_threshold_structure(instance: &Instance, x: &[f64]) -> bool {
    #[derive(PartialEq, PartialOrd)]
    enum Phase {
        Full,
        Empty,
    }
    let mut phase = Phase::Full;
    for item in bpb_sorted(instance.items()) {
        let xi = x[item.id];
        if !(0.0..=1.0).contains(&xi) {
            return false;
        }
        match phase {
            Phase::Full if xi == 1.0 => {}
            Phase::Full => phase = Phase::Empty,
            Phase::Empty if xi == 0.0 => {}
            Phase::Empty => return false,
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingCheck {
    pub v1: f64,
    pub v2: f64,
    pub holds: bool,
}

/// `v_{C2} <= (C2 / C1) * v_{C1}` for `0 < C1 <= C2`.
pub fn scaling_ratio_check(instance: &Instance, c1: f64, c2: f64) -> Result<ScalingCheck> {
    if !(c1 > 0.0 && c1 <= c2) {
        return Err(Error::InvalidArgument(format!("need 0 < C1 <= C2, got C1 = {c1}, C2 = {c2}")));
    }
    let v1 = fractional_opt(instance, c1)?.value;
    let v2 = fractional_opt(instance, c2)?.value;
    Ok(ScalingCheck {
        v1,
        v2,
        holds: v2 <= (c2 / c1) * v1 + EPS,
    })
}

/// Output of the prefix greedy `OFF`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffResult {
    /// Selected items in ascending buck-per-bang order.
    pub selected: Vec<Item>,
    /// Buck-per-bang of the last selected item; `+inf` when every item was
    /// taken, `0` when even the first item did not fit.
    pub b_star: f64,
    pub total_weight: f64,
    pub total_value: f64,
    /// The first item in buck-per-bang order already exceeded the capacity.
    pub blocked: bool,
}

impl OffResult {
    pub fn ids(&self) -> Vec<usize> {
        self.selected.iter().map(|i| i.id).collect()
    }

    pub fn took_everything(&self) -> bool {
        self.b_star == f64::INFINITY
    }
}

/// `OFF` over an arbitrary subset of items: take the longest prefix of the
/// buck-per-bang order whose weight fits in `capacity`, stopping at the
/// first item that does not fit.
pub fn off_greedy_items<'a, I>(items: I, capacity: f64) -> OffResult
where
    I: IntoIterator<Item = &'a Item>,
{
    let sorted = bpb_sorted(items);
    let mut selected = Vec::new();
    let mut total_weight = 0.0;
    let mut total_value = 0.0;
    for item in &sorted {
        if total_weight + item.weight > capacity + EPS {
            break;
        }
        total_weight += item.weight;
        total_value += item.value;
        selected.push(**item);
    }
    let blocked = selected.is_empty() && !sorted.is_empty();
    let b_star = if selected.len() == sorted.len() {
        f64::INFINITY
    } else if blocked {
        0.0
    } else {
        selected.last().map(Item::buck_per_bang).unwrap_or(0.0)
    };
    OffResult {
        selected,
        b_star,
        total_weight,
        total_value,
        blocked,
    }
}

pub fn off_greedy(instance: &Instance, capacity: f64) -> Result<OffResult> {
    if capacity.is_nan() || capacity <= 0.0 {
        return Err(Error::InvalidArgument(format!("capacity must be > 0, got {capacity}")));
    }
    Ok(off_greedy_items(instance.items(), capacity))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproximationCheck {
    pub off_value: f64,
    pub frac_value_at_1: f64,
    pub holds: bool,
}

/// `OFF` at capacity `C` in `(1, 2]` against the fractional optimum at
/// capacity 1: `v(OFF) >= (C - 1) * v_1`.
pub fn off_approximation_check(instance: &Instance, capacity: f64) -> Result<ApproximationCheck> {
    if !(capacity > 1.0 && capacity <= 2.0) {
        return Err(Error::CapacityDomain {
            capacity,
            range: "(1, 2]",
        });
    }
    let off_value = off_greedy(instance, capacity)?.total_value;
    let frac_value_at_1 = fractional_opt(instance, 1.0)?.value;
    Ok(ApproximationCheck {
        off_value,
        frac_value_at_1,
        holds: off_value >= (capacity - 1.0) * frac_value_at_1 - EPS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralMode {
    Exhaustive,
    Quantized,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralOpt {
    pub value: f64,
    pub mode: IntegralMode,
}

/// 0/1 knapsack optimum. Exact subset enumeration for `n <= 20`; otherwise a
/// DP over weights rounded up to multiples of `1 / resolution`, which never
/// overstates the true optimum.
pub fn integral_opt(instance: &Instance, capacity: f64, resolution: usize) -> Result<IntegralOpt> {
    if instance.len() <= EXHAUSTIVE_LIMIT {
        Ok(IntegralOpt {
            value: integral_opt_exhaustive(instance, capacity)?,
            mode: IntegralMode::Exhaustive,
        })
    } else {
        Ok(IntegralOpt {
            value: integral_opt_quantized(instance, capacity, resolution)?,
            mode: IntegralMode::Quantized,
        })
    }
}

pub fn integral_opt_exhaustive(instance: &Instance, capacity: f64) -> Result<f64> {
    let n = instance.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "exhaustive mode supports n <= {EXHAUSTIVE_LIMIT}, got {n}"
        )));
    }
    let items = instance.items();
    let subsets = 1usize << n;
    let mut weight = vec![0.0f64; subsets];
    let mut value = vec![0.0f64; subsets];
    let mut best = 0.0f64;
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        weight[mask] = weight[rest] + items[low].weight;
        value[mask] = value[rest] + items[low].value;
        if weight[mask] <= capacity + EPS && value[mask] > best {
            best = value[mask];
        }
    }
    Ok(best)
}

pub fn integral_opt_quantized(instance: &Instance, capacity: f64, resolution: usize) -> Result<f64> {
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be >= 1".into()));
    }
    if !capacity.is_finite() || capacity < 0.0 {
        return Err(Error::InvalidArgument(format!("capacity must be finite and >= 0, got {capacity}")));
    }
    let units = (capacity * resolution as f64).floor();
    let cells = (instance.len() as u128 + 1) * (units as u128 + 1);
    if cells > DP_CELL_LIMIT {
        return Err(Error::TableTooLarge {
            cells,
            limit: DP_CELL_LIMIT,
        });
    }
    let cap = units as usize;
    let mut best = vec![0.0f64; cap + 1];
    for item in instance.items() {
        let w = (item.weight * resolution as f64).ceil() as usize;
        if w > cap {
            continue;
        }
        for c in (w..=cap).rev() {
            let cand = best[c - w] + item.value;
            if cand > best[c] {
                best[c] = cand;
            }
        }
    }
    Ok(best[cap])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(pairs: &[(f64, f64)]) -> Instance {
        Instance::from_pairs(pairs).unwrap()
    }

    #[test]
    fn fractional_examples() {
        let a = inst(&[(6.0, 0.5), (4.0, 0.5), (1.0, 0.5)]);
        let s = fractional_opt(&a, 1.0).unwrap();
        assert_eq!(s.x, vec![1.0, 1.0, 0.0]);
        assert_eq!(s.value, 10.0);

        let b = inst(&[(10.0, 0.8), (5.0, 0.8)]);
        let s = fractional_opt(&b, 1.0).unwrap();
        assert_eq!(s.x[0], 1.0);
        assert!((s.x[1] - 0.25).abs() < 1e-12);
        assert!((s.value - 11.25).abs() < 1e-12);
        assert!((s.capacity_used - 1.0).abs() < 1e-12);

        let s = fractional_opt(&a, 5.0).unwrap();
        assert_eq!(s.x, vec![1.0; 3]);
        assert_eq!(s.value, 11.0);
        assert!(fractional_opt(&a, 0.0).is_err());
    }

    #[test]
    fn scaling_examples() {
        let b = inst(&[(10.0, 0.8), (5.0, 0.8)]);
        let s = scaling_ratio_check(&b, 1.0, 2.0).unwrap();
        assert!((s.v1 - 11.25).abs() < 1e-12);
        assert!((s.v2 - 15.0).abs() < 1e-12);
        assert!(s.holds);

        let s = scaling_ratio_check(&b, 1.3, 1.3).unwrap();
        assert_eq!(s.v1, s.v2);
        assert!(s.holds);
        assert!(scaling_ratio_check(&b, 2.0, 1.0).is_err());
    }

    #[test]
    fn off_examples() {
        let b = inst(&[(10.0, 0.8), (5.0, 0.8)]);
        let r = off_greedy(&b, 1.0).unwrap();
        assert_eq!(r.ids(), vec![0]);
        assert!((r.b_star - 0.08).abs() < 1e-15);
        assert!(!r.blocked);

        let r = off_greedy(&b, 2.0).unwrap();
        assert_eq!(r.ids(), vec![0, 1]);
        assert_eq!(r.b_star, f64::INFINITY);
        assert!(r.took_everything());
        assert!((r.selected[1].buck_per_bang() - 0.16).abs() < 1e-15);

        let empty = Instance::new(vec![]).unwrap();
        let r = off_greedy(&empty, 1.0).unwrap();
        assert!(r.selected.is_empty());
        assert!(!r.blocked);
    }

    #[test]
    fn off_blocked_when_first_item_too_heavy() {
        let heavy = inst(&[(1.0, 0.9), (1.0, 1.0)]);
        let r = off_greedy(&heavy, 0.5).unwrap();
        assert!(r.blocked);
        assert!(r.selected.is_empty());
        assert_eq!(r.b_star, 0.0);
    }

    #[test]
    fn off_stops_at_first_violation() {
        // b-order: item 0 (0.1), item 1 (0.5), item 2 (1.0); item 1 blocks, item 2 would fit
        let a = inst(&[(5.0, 0.5), (1.8, 0.9), (0.1, 0.1)]);
        let r = off_greedy(&a, 1.0).unwrap();
        assert_eq!(r.ids(), vec![0]);
    }

    #[test]
    fn approximation_examples() {
        let single = inst(&[(1.0, 1.0)]);
        let c = off_approximation_check(&single, 1.5).unwrap();
        assert_eq!(c.off_value, 1.0);
        assert_eq!(c.frac_value_at_1, 1.0);
        assert!(c.holds);
        assert!(matches!(off_approximation_check(&single, 1.0), Err(Error::CapacityDomain { .. })));
        assert!(matches!(off_approximation_check(&single, 2.5), Err(Error::CapacityDomain { .. })));
    }

    #[test]
    fn integral_examples() {
        let a = inst(&[(6.0, 0.5), (4.0, 0.5), (1.0, 0.5)]);
        assert_eq!(integral_opt(&a, 1.0, 1000).unwrap().value, 10.0);
        assert_eq!(integral_opt(&a, 3.0, 1000).unwrap().value, 11.0);
        assert_eq!(integral_opt_quantized(&a, 1.0, 1000).unwrap(), 10.0);

        let b = inst(&[(10.0, 0.8), (5.0, 0.8)]);
        let r = integral_opt(&b, 1.0, 100).unwrap();
        assert_eq!(r.value, 10.0);
        assert_eq!(r.mode, IntegralMode::Exhaustive);
        assert_eq!(integral_opt_quantized(&b, 1.0, 100).unwrap(), 10.0);
    }

    #[test]
    fn quantized_rejects_huge_tables() {
        let a = inst(&[(6.0, 0.5), (4.0, 0.5)]);
        assert!(matches!(
            integral_opt_quantized(&a, 2.0, usize::MAX / 4),
            Err(Error::TableTooLarge { .. })
        ));
        assert!(integral_opt_quantized(&a, 1.0, 0).is_err());
    }

    #[test]
    fn threshold_structure_detector() {
        let a = inst(&[(6.0, 0.5), (4.0, 0.5), (1.0, 0.5)]);
        assert!(has_threshold_structure(&a, &[1.0, 0.5, 0.0]));
        assert!(!has_threshold_structure(&a, &[1.0, 0.0, 0.5]));
        assert!(!has_threshold_structure(&a, &[0.5, 0.5, 0.0]));
    }
}
