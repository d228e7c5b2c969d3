mod common;

use proptest::prelude::*;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn validator_is_order_independent((g, f) in labeled(12), var in variant(), seed in any::<u64>()) {
        order_independent(&g, &f, var, seed)?;
    }

    #[test]
    fn raising_a_label_never_adds_violations(
        (g, f) in labeled(9),
        var in variant(),
        pick in any::<prop::sample::Index>(),
        to_two in any::<bool>(),
    ) {
        raising_is_monotone(&g, &f, var, pick, to_two)?;
    }

    #[test]
    fn edge_list_round_trips(f in family(), n in 5usize..=40) {
        edge_list_round_trip(f, n)?;
    }

    #[test]
    fn labeling_text_round_trips(
        (g, f) in labeled(15),
        var in variant(),
        source in proptest::option::of("Thm[1-7]/n=[0-9a-z+]{1,6}"),
    ) {
        labeling_round_trip(&g, &f, var, source.as_deref())?;
    }

    #[test]
    fn dp_is_identical_across_thread_counts(
        f in family(),
        var in variant(),
        n in 5usize..=7,
        threads in 1usize..=8,
    ) {
        dp_deterministic(f, var, n, threads)?;
    }
}
