use expknap_core::model::{ArrivalOrder, Instance, Item};
use expknap_core::secretary::{classical_secretary, ksec_t_threshold, t_threshold};
use proptest::prelude::*;

/// Integer values with frequent ties, plus an arrival order and threshold.
fn scenario() -> impl Strategy<Value = (Vec<f64>, Vec<usize>, usize)> {
    (1usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec(1u32..12, n).prop_map(|v| v.into_iter().map(f64::from).collect::<Vec<_>>()),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            0..=n,
        )
    })
}

/// `(value, -id)` comparison written out by hand.
fn better(a: &Item, b: &Item) -> bool {
    a.value > b.value || (a.value == b.value && a.id < b.id)
}

fn arrivals(values: &[f64], order: &[usize]) -> Vec<Item> {
    let inst = Instance::unit_weight(values).unwrap();
    let order = ArrivalOrder::new(order.to_vec()).unwrap();
    inst.arrivals(&order).copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn t_threshold_selects_exactly_the_running_records((values, order, t) in scenario()) {
        let seq = arrivals(&values, &order);
        let expected: Vec<usize> = (t..seq.len())
            .filter(|&p| seq[..p].iter().all(|prev| better(&seq[p], prev)))
            .map(|p| p + 1)
            .collect();
        prop_assert_eq!(t_threshold(&seq, t).positions(), expected);
    }

    #[test]
    fn classical_is_the_first_threshold_pick((values, order, t) in scenario()) {
        let seq = arrivals(&values, &order);
        let all = t_threshold(&seq, t).positions();
        let first = classical_secretary(&seq, t).positions();
        prop_assert!(first.len() <= 1);
        prop_assert_eq!(first.first(), all.first());
    }

    #[test]
    fn ksec_with_k_one_is_t_threshold((values, order, t) in scenario()) {
        let seq = arrivals(&values, &order);
        prop_assert_eq!(ksec_t_threshold(&seq, 1, t), t_threshold(&seq, t));
    }

    #[test]
    fn ksec_selects_arrivals_beating_kth_best_so_far((values, order, t) in scenario(), k in 1usize..6) {
        let seq = arrivals(&values, &order);
        let expected: Vec<usize> = (t..seq.len())
            .filter(|&p| {
                let mut prior: Vec<&Item> = seq[..p].iter().collect();
                prior.sort_by(|a, b| if better(a, b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
                prior.len() < k || better(&seq[p], prior[k - 1])
            })
            .map(|p| p + 1)
            .collect();
        prop_assert_eq!(ksec_t_threshold(&seq, k, t).positions(), expected);
    }
}
