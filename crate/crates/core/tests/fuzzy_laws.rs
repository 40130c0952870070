mod common;

use common::{d, fuzzy_set, rng};
use fuzzym::dsl::parse_fuzzy_set;
use fuzzym::fuzzy::approx_equal;
use fuzzym::{Degree, FuzzyMultiset, FuzzySet, NormKind};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn kind() -> impl Strategy<Value = NormKind> {
    prop::sample::select(NormKind::ALL.to_vec())
}

proptest! {
    #[test]
    fn tnorm_below_min_and_conorm_above_max(k in kind(), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let t = k.tnorm(d(a), d(b)).value();
        let s = k.tconorm(d(a), d(b)).value();
        prop_assert!(t <= a.min(b) + TOL);
        prop_assert!(s + TOL >= a.max(b));
    }

    #[test]
    fn conorm_is_dual_of_tnorm(k in kind(), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let dual = k.tnorm(d(a).complement(), d(b).complement()).complement();
        prop_assert!((k.tconorm(d(a), d(b)).value() - dual.value()).abs() <= TOL);
    }

    #[test]
    fn fold_is_one_for_empty_and_nonincreasing(k in kind(), xs in prop::collection::vec(0.0..=1.0f64, 0..12)) {
        let degrees: Vec<Degree> = xs.iter().map(|&x| d(x)).collect();
        prop_assert_eq!(k.fold(std::iter::empty()), Degree::ONE);
        for n in 1..=degrees.len() {
            prop_assert!(k.fold(degrees[..n].iter().copied()).value() <= k.fold(degrees[..n - 1].iter().copied()).value() + TOL);
        }
    }

    #[test]
    fn approx_equal_is_symmetric_and_reflexive(x in -10.0..10.0f64, y in -10.0..10.0f64, w in 0.01..5.0f64) {
        prop_assert_eq!(approx_equal(x, y, w).unwrap(), approx_equal(y, x, w).unwrap());
        prop_assert_eq!(approx_equal(x, x, w).unwrap(), Degree::ONE);
    }

    #[test]
    fn set_display_parses_back(seed in any::<u64>()) {
        let s = fuzzy_set(&mut rng(seed));
        let back = parse_fuzzy_set(&s.to_string()).unwrap();
        // the literal lists the support only, so compare on it
        prop_assert_eq!(back.support().collect::<Vec<_>>(), s.support().collect::<Vec<_>>());
    }

    #[test]
    fn union_and_intersection_bracket_the_operands(seed in any::<u64>(), k in kind()) {
        let mut r = rng(seed);
        let (a, b) = (fuzzy_set(&mut r), fuzzy_set(&mut r));
        let (u, i) = (a.union(&b, k), a.intersection(&b, k));
        for x in a.universe() {
            prop_assert!(i.degree(x).value() <= a.degree(x).min(b.degree(x)).value() + TOL);
            prop_assert!(u.degree(x).value() + TOL >= a.degree(x).max(b.degree(x)).value());
        }
    }

    #[test]
    fn multiset_merge_adds_counts_and_cardinality_is_superadditive_under_max(
        xs in prop::collection::vec((0usize..4, 1u64..6, 0.01..=1.0f64), 0..8),
        ys in prop::collection::vec((0usize..4, 1u64..6, 0.01..=1.0f64), 0..8),
        k in kind(),
    ) {
        let build = |v: &[(usize, u64, f64)]| {
            let mut m = FuzzyMultiset::new();
            for &(s, n, x) in v {
                m.add(format!("s{s}"), n, d(x), k);
            }
            m
        };
        let (a, b) = (build(&xs), build(&ys));
        let merged = a.merge(&b, k);
        prop_assert_eq!(merged.count(), a.count() + b.count());
        for (sym, _, deg) in merged.iter() {
            prop_assert!(deg.value() + TOL >= a.degree(sym).max(b.degree(sym)).value());
        }
        prop_assert!(merged.cardinality() + TOL >= a.cardinality().max(b.cardinality()));
    }
}

#[test]
fn tuple_sugar_matches_braces() {
    let braces = parse_fuzzy_set("{2@0.3, 6@0.5}").unwrap();
    let tuples = parse_fuzzy_set("fuzzy set (2,0.3), (6,0.5)").unwrap();
    assert_eq!(braces, tuples);
    assert_eq!(braces.degree("6"), d(0.5));
}

#[test]
fn negative_literal_is_rejected() {
    let err = parse_fuzzy_set("{3@-0.9}").unwrap_err();
    assert!(err.to_string().contains("[0,1]"), "{err}");
}

#[test]
fn complement_of_empty_is_full() {
    let u = ["x", "y"];
    assert_eq!(FuzzySet::empty(u).complement(), FuzzySet::full(u));
}
