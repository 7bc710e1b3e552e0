use std::sync::OnceLock;

use proptest::prelude::*;

use multicross::diagram::{two_crossing_corpus, MultiCrossingDiagram, Wiring};
use multicross::skein::{all_types, build_relation, CrossingType};
use multicross::splits::{closure_count, enumerate_splits, split_distance, Split};

fn splits(n: usize) -> &'static [Split] {
    static S: OnceLock<Vec<Vec<Split>>> = OnceLock::new();
    &S.get_or_init(|| (0..=6).map(|n| if n == 0 { vec![] } else { enumerate_splits(n).unwrap() }).collect())[n]
}

fn types(n: usize) -> &'static [CrossingType] {
    static T: OnceLock<Vec<Vec<CrossingType>>> = OnceLock::new();
    &T.get_or_init(|| (0..=6).map(|n| if n < 2 { vec![] } else { all_types(n).unwrap() }).collect())[n]
}

fn split_at(n: usize, i: usize) -> Split {
    let s = splits(n);
    s[i % s.len()]
}

fn diagram(n: usize, ti: usize, si: usize) -> MultiCrossingDiagram {
    let t = &types(n)[ti % types(n).len()];
    MultiCrossingDiagram::single_crossing(t.clone(), &split_at(n, si)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_order_minus_closure(n in 1usize..=6, a in any::<usize>(), b in any::<usize>()) {
        let (s, t) = (split_at(n, a), split_at(n, b));
        let d = split_distance(&s, &t).unwrap();
        prop_assert_eq!(d, n - closure_count(&s, &t).unwrap());
        prop_assert_eq!(d, split_distance(&t, &s).unwrap());
    }

    #[test]
    fn closure_is_invariant_under_rotation_and_reflection(n in 1usize..=6, a in any::<usize>(), b in any::<usize>(), k in 0usize..12) {
        let (s, t) = (split_at(n, a), split_at(n, b));
        let c = closure_count(&s, &t).unwrap();
        prop_assert_eq!(closure_count(&s.rotate(k), &t.rotate(k)).unwrap(), c);
        prop_assert_eq!(closure_count(&s.reflect(), &t.reflect()).unwrap(), c);
    }

    #[test]
    fn width_never_exceeds_floor(n in 2usize..=6, ti in any::<usize>()) {
        let t = &types(n)[ti % types(n).len()];
        let rel = build_relation(t).unwrap();
        prop_assert!(rel.width() as usize <= n * n / 2);
    }

    #[test]
    fn bracket_matches_oracle(n in 2usize..=6, ti in any::<usize>(), si in any::<usize>()) {
        let d = diagram(n, ti, si);
        let b = d.bracket().unwrap();
        prop_assert_eq!(d.perturb_with(Wiring::Bubble).bracket_oracle().unwrap(), b.clone());
        prop_assert_eq!(d.perturb_with(Wiring::Insertion).bracket_oracle().unwrap(), b);
    }

    #[test]
    fn mirror_inverts_the_bracket(n in 2usize..=6, ti in any::<usize>(), si in any::<usize>()) {
        let d = diagram(n, ti, si);
        prop_assert_eq!(d.mirror().bracket().unwrap(), d.bracket().unwrap().mirror());
    }

    #[test]
    fn span_bounds_hold(n in 2usize..=6, ti in any::<usize>(), si in any::<usize>()) {
        let report = diagram(n, ti, si).verify_span_bound().unwrap();
        prop_assert!(report.holds(), "{:?}", report);
    }

    #[test]
    fn corpus_is_planar_and_bounded(seed in any::<u64>()) {
        for d in two_crossing_corpus(seed, 3, 3..=4).unwrap() {
            prop_assert!(d.is_planar().unwrap());
            prop_assert_eq!(d.crossings.len(), 2);
            let report = d.verify_span_bound().unwrap();
            prop_assert!(report.holds(), "{:?}", report);
        }
    }

    #[test]
    fn doubling_keeps_the_jones_polynomial(n in 3usize..=4, ti in any::<usize>(), si in any::<usize>(), e in any::<usize>()) {
        let d = diagram(n, ti, si);
        prop_assume!(d.components() == 1 && !d.edges.is_empty());
        let doubled = d.double_order(e % d.edges.len()).unwrap();
        prop_assert_eq!(doubled.order_counts().into_iter().collect::<Vec<_>>(), vec![(2 * n, 1)]);
        prop_assert!(doubled.is_planar().unwrap());
        prop_assert_eq!(doubled.jones().unwrap(), d.jones().unwrap());
    }

    #[test]
    fn json_round_trips(n in 2usize..=5, ti in any::<usize>(), si in any::<usize>()) {
        let d = diagram(n, ti, si);
        prop_assert_eq!(MultiCrossingDiagram::from_json(&d.to_json()).unwrap(), d);
    }
}
