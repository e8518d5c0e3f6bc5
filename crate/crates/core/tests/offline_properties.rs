use expknap_core::model::Instance;
use expknap_core::offline::{
    fractional_opt, has_threshold_structure, integral_opt_exhaustive, integral_opt_quantized, off_approximation_check,
    off_greedy, scaling_ratio_check,
};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn instance(max_n: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec((0.01f64..10.0, 0.01f64..=1.0), 1..=max_n)
        .prop_map(|pairs| Instance::from_pairs(&pairs).unwrap())
}

/// LP optimum by brute force over vertices: every vertex of the knapsack
/// polytope takes a subset whole plus at most one item partially.
fn lp_by_vertices(inst: &Instance, capacity: f64) -> f64 {
    let items = inst.items();
    let n = items.len();
    let mut best = 0.0f64;
    for mask in 0u32..(1 << n) {
        let (mut w, mut v) = (0.0, 0.0);
        for (i, it) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w += it.weight;
                v += it.value;
            }
        }
        if w > capacity + TOL {
            continue;
        }
        best = best.max(v);
        let room = capacity - w;
        for (i, it) in items.iter().enumerate() {
            if mask >> i & 1 == 0 {
                best = best.max(v + (room / it.weight).min(1.0) * it.value);
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fractional_matches_vertex_oracle(inst in instance(10), c in 0.05f64..3.0) {
        let sol = fractional_opt(&inst, c).unwrap();
        let oracle = lp_by_vertices(&inst, c);
        prop_assert!((sol.value - oracle).abs() <= 1e-9 * oracle.max(1.0), "{} vs {}", sol.value, oracle);
        prop_assert!(sol.capacity_used <= c + TOL);
        prop_assert!(sol.fractional_count() <= 1);
        prop_assert!(has_threshold_structure(&inst, &sol.x));
    }

    #[test]
    fn fractional_bounds_integral(inst in instance(12), c in 0.05f64..2.5) {
        let frac = fractional_opt(&inst, c).unwrap().value;
        let exact = integral_opt_exhaustive(&inst, c).unwrap();
        let quantized = integral_opt_quantized(&inst, c, 1000).unwrap();
        prop_assert!(frac >= exact - TOL);
        prop_assert!(quantized <= exact + TOL);
    }

    #[test]
    fn fractional_value_is_monotone_and_concave_in_capacity(inst in instance(30), a in 0.05f64..2.0, b in 0.05f64..2.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let v = |c: f64| fractional_opt(&inst, c).unwrap().value;
        prop_assert!(v(hi) >= v(lo) - TOL);
        prop_assert!(v((lo + hi) / 2.0) >= (v(lo) + v(hi)) / 2.0 - TOL);
    }

    #[test]
    fn scaling_inequality(inst in instance(50), a in 0.05f64..2.0, b in 0.05f64..2.0) {
        let (c1, c2) = if a <= b { (a, b) } else { (b, a) };
        let check = scaling_ratio_check(&inst, c1, c2).unwrap();
        prop_assert!(check.holds, "{check:?}");
    }

    #[test]
    fn off_is_a_maximal_greedy_prefix(inst in instance(50), c in 1.0001f64..=2.0) {
        let off = off_greedy(&inst, c).unwrap();
        prop_assert!(off.total_weight <= c + TOL);
        let mut ranked: Vec<_> = inst.items().to_vec();
        ranked.sort_by(|x, y| {
            (x.weight / x.value).total_cmp(&(y.weight / y.value)).then(x.id.cmp(&y.id))
        });
        let k = off.selected.len();
        prop_assert_eq!(off.ids(), ranked[..k].iter().map(|i| i.id).collect::<Vec<_>>());
        if k < ranked.len() {
            prop_assert!(off.total_weight + ranked[k].weight > c + TOL);
        } else {
            prop_assert!(off.took_everything());
        }
        prop_assert!(off_approximation_check(&inst, c).unwrap().holds);
    }
}

#[test]
fn off_capacity_outside_range_is_rejected() {
    let inst = Instance::from_pairs(&[(1.0, 0.5)]).unwrap();
    assert!(off_approximation_check(&inst, 1.0).is_err());
    assert!(off_approximation_check(&inst, 2.5).is_err());
}
