//! Lower-bound programs for the expected-capacity secretary problem.
//!
//! [`secretary_lower_bound`] solves the discrete "first selection position"
//! program exactly with harmonic sums. [`adversarial_lp_value`] gives the
//! closed form `1/n` of the adversarial-order LP, and
//! [`adversarial_lp_vertex_enumeration`] re-derives it by enumerating the
//! vertices of the feasible polytope.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundResult {
    pub n: usize,
    /// Earliest position at which an optimal algorithm may start selecting.
    pub i_star: usize,
    /// Probability the best item arrives before `i_star`.
    pub p_miss: f64,
    pub success_bound: f64,
}

/// `i* = min { i : sum_{j=i}^{n} 1/j <= 1 }`, `p_miss = (i* - 1) / n`.
pub fn secretary_lower_bound(n: usize) -> Result<LowerBoundResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let mut i_star = n;
    let mut suffix = 1.0 / n as f64;
    while i_star > 1 {
        let next = suffix + 1.0 / (i_star - 1) as f64;
        if next > 1.0 {
            break;
        }
        suffix = next;
        i_star -= 1;
    }
    Ok(LowerBoundResult {
        n,
        i_star,
        p_miss: (i_star - 1) as f64 / n as f64,
        success_bound: (n + 1 - i_star) as f64 / n as f64,
    })
}

/// `true` when starting selections at position `i` keeps the expected count
/// `sum_{j=i}^{n} 1/j` within 1.
pub fn start_position_feasible(n: usize, i: usize) -> bool {
    assert!(1 <= i && i <= n);
    crate::secretary::harmonic_range(i, n) <= 1.0
}

/// Optimum of `max sum_l p_l * l / n` s.t. `sum_l l * p_l <= 1`, `p in [0,1]^n`.
/// Substituting `q_l = l * p_l` turns the objective into `(1/n) sum q_l` under
/// `sum q_l <= 1`, hence `1/n`.
pub fn adversarial_lp_value(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(1.0 / n as f64)
}

/// The same LP solved by enumerating every vertex of the feasible region.
pub fn adversarial_lp_vertex_enumeration(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let cost: Vec<f64> = (1..=n).map(|l| l as f64).collect();
    let objective: Vec<f64> = (1..=n).map(|l| l as f64 / n as f64).collect();
    Ok(box_lp_vertex_max(&cost, &objective, 1.0))
}

/// Maximizes `objective . p` over `{ p in [0,1]^m : cost . p <= budget }`
/// (positive costs) by visiting every vertex. A vertex fixes all variables at
/// 0 or 1 except at most one, which is set to make the budget tight.
pub fn box_lp_vertex_max(cost: &[f64], objective: &[f64], budget: f64) -> f64 {
    assert_eq!(cost.len(), objective.len());
    let mut best = f64::NEG_INFINITY;
    let mut at_upper = vec![false; cost.len()];
    visit_upper_sets(cost, objective, budget, 0, 0.0, 0.0, &mut at_upper, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn visit_upper_sets(
    cost: &[f64],
    objective: &[f64],
    budget: f64,
    next: usize,
    used: f64,
    value: f64,
    at_upper: &mut [bool],
    best: &mut f64,
) {
    // vertex with every variable at a bound
    *best = best.max(value);
    // vertices with one variable strictly between its bounds
    let slack = budget - used;
    for j in 0..cost.len() {
        if at_upper[j] {
            continue;
        }
        let p = slack / cost[j];
        if p > 0.0 && p < 1.0 {
            *best = best.max(value + p * objective[j]);
        }
    }
    for j in next..cost.len() {
        if used + cost[j] <= budget {
            at_upper[j] = true;
            visit_upper_sets(cost, objective, budget, j + 1, used + cost[j], value + objective[j], at_upper, best);
            at_upper[j] = false;
        }
    }
}
