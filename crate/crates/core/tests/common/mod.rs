//! Strategies and property bodies shared by the property suites and the
//! acceptance run.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use proptest::prelude::*;
use proptest::sample::{select, Index};
use proptest::test_runner::TestCaseError;

use polydom::labeling::{is_admissible, validate, validate_in_order};
use polydom::solver::{solve_profile_dp_with, DpOptions, SolveResult};
use polydom::{generate, FamilyKind, Label, LabelFunction, PolytopeGraph, Variant, Violation};

pub const CASES: u32 = 1000;

pub fn family() -> impl Strategy<Value = FamilyKind> {
    select(FamilyKind::ALL.to_vec())
}

pub fn variant() -> impl Strategy<Value = Variant> {
    select(Variant::ALL.to_vec())
}

fn label() -> impl Strategy<Value = Label> {
    select(Label::ALL.to_vec())
}

/// A graph with a random labeling, biased so that some draws are admissible.
pub fn labeled(max_n: usize) -> impl Strategy<Value = (PolytopeGraph, LabelFunction)> {
    (family(), 5..=max_n, 0u8..3).prop_flat_map(|(f, n, bias)| {
        let g = generate(f, n).unwrap();
        let len = g.vertex_count();
        let weighted = match bias {
            0 => prop_oneof![label()].boxed(),
            1 => prop_oneof![1 => Just(Label::MinusOne), 2 => Just(Label::One), 4 => Just(Label::Two)].boxed(),
            _ => prop_oneof![1 => Just(Label::MinusOne), 6 => Just(Label::One), 3 => Just(Label::Two)].boxed(),
        };
        proptest::collection::vec(weighted, len).prop_map(move |labels| {
            let f = LabelFunction::new(&g, labels).unwrap();
            (g.clone(), f)
        })
    })
}

fn violated(v: &[Violation], pick: fn(&Violation) -> bool) -> BTreeSet<String> {
    v.iter().filter(|x| pick(x)).map(|x| x.vertex().to_string()).collect()
}

pub fn order_independent(g: &PolytopeGraph, f: &LabelFunction, var: Variant, seed: u64) -> Result<(), TestCaseError> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    // Fisher-Yates driven by a splitmix sequence from the drawn seed.
    let mut s = seed;
    for i in (1..order.len()).rev() {
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        order.swap(i, (z ^ (z >> 31)) as usize % (i + 1));
    }
    let canonical = validate(g, f, var).unwrap();
    let shuffled = validate_in_order(g, f, var, &order).unwrap();
    prop_assert_eq!(&canonical, &shuffled);
    let reversed: Vec<usize> = (0..g.vertex_count()).rev().collect();
    prop_assert_eq!(&canonical, &validate_in_order(g, f, var, &reversed).unwrap());
    prop_assert_eq!(canonical.is_empty(), is_admissible(g, f, var).unwrap());
    Ok(())
}

pub fn raising_is_monotone(
    g: &PolytopeGraph,
    f: &LabelFunction,
    var: Variant,
    pick: Index,
    to_two: bool,
) -> Result<(), TestCaseError> {
    let minus: Vec<usize> = (0..g.vertex_count())
        .filter(|&i| f.labels()[i] == Label::MinusOne)
        .collect();
    prop_assume!(!minus.is_empty());
    let v = g.vertex(minus[pick.index(minus.len())]);
    let before = validate(g, f, var).unwrap();
    let mut raised = f.clone();
    raised.set(g, v, if to_two { Label::Two } else { Label::One }).unwrap();
    let after = validate(g, &raised, var).unwrap();

    let low = |x: &Violation| matches!(x, Violation::SumTooLow { .. });
    let uncovered = |x: &Violation| matches!(x, Violation::UncoveredMinusOne { .. });
    prop_assert!(violated(&after, low).is_subset(&violated(&before, low)));
    let mut expected = violated(&before, uncovered);
    expected.remove(&v.to_string());
    if to_two {
        prop_assert!(violated(&after, uncovered).is_subset(&expected));
    } else {
        prop_assert_eq!(violated(&after, uncovered), expected);
    }
    if before.is_empty() {
        prop_assert!(after.is_empty());
    }
    prop_assert_eq!(raised.weight(), f.weight() + if to_two { 3 } else { 2 });
    Ok(())
}

pub fn edge_list_round_trip(f: FamilyKind, n: usize) -> Result<(), TestCaseError> {
    let g = generate(f, n).unwrap();
    let text = g.to_edge_list();
    let back = PolytopeGraph::parse_edge_list(&text).unwrap();
    prop_assert_eq!(back.to_edge_list(), text);
    prop_assert_eq!(back, g);
    Ok(())
}

pub fn labeling_round_trip(
    g: &PolytopeGraph,
    f: &LabelFunction,
    var: Variant,
    source: Option<&str>,
) -> Result<(), TestCaseError> {
    let text = f.to_text(g, var, source);
    let (back, header_variant) = LabelFunction::parse_text(g, &text).unwrap();
    prop_assert_eq!(header_variant, Some(var));
    prop_assert_eq!(back.to_text(g, var, source), text);
    prop_assert_eq!(&back, f);
    Ok(())
}

type Key = (FamilyKind, Variant, usize);

/// Single-threaded reference results, computed once per instance.
fn reference(key: Key) -> SolveResult {
    static CACHE: OnceLock<Mutex<HashMap<Key, SolveResult>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let g = generate(key.0, key.2).unwrap();
    let opts = DpOptions {
        threads: Some(1),
        certificate_bound: true,
    };
    let r = solve_profile_dp_with(&g, key.1, &opts).unwrap();
    cache.lock().unwrap().insert(key, r.clone());
    r
}

pub fn dp_deterministic(f: FamilyKind, var: Variant, n: usize, threads: usize) -> Result<(), TestCaseError> {
    let want = reference((f, var, n));
    let g = generate(f, n).unwrap();
    let opts = DpOptions {
        threads: Some(threads),
        certificate_bound: true,
    };
    let got = solve_profile_dp_with(&g, var, &opts).unwrap();
    prop_assert_eq!(got.gamma, want.gamma);
    prop_assert_eq!(got.stats, want.stats);
    prop_assert_eq!(&got.witness, &want.witness);
    prop_assert!(validate(&g, &got.witness, var).unwrap().is_empty());
    prop_assert_eq!(got.witness.weight(), got.gamma);
    Ok(())
}
