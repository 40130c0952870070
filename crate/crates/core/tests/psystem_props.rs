mod common;

use common::{crisp_run, nested_system, rng, single_membrane_system};
use fuzzym::fpsystem::{FpsError, PSystem};
use fuzzym::NormKind;
use proptest::prelude::*;

fn norm() -> impl Strategy<Value = NormKind> {
    prop::sample::select(NormKind::ALL.to_vec())
}

fn shape(p: &PSystem) -> Vec<(usize, String)> {
    p.compartments()
        .into_iter()
        .map(|(depth, c)| (depth, c.id.clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ticks_are_deterministic_and_keep_the_tree(seed in any::<u64>(), k in norm()) {
        let mut p = nested_system(&mut rng(seed), k);
        let tree = shape(&p);
        for _ in 0..6 {
            let next = p.tick();
            prop_assert_eq!(&next, &p.tick());
            prop_assert_eq!(shape(&next), tree.clone());
            p = next;
        }
    }

    #[test]
    fn halted_systems_are_fixed_points(seed in any::<u64>(), k in norm()) {
        let p = nested_system(&mut rng(seed), k);
        let r = p.run(40).unwrap();
        if r.halted {
            prop_assert_eq!(r.system.tick(), r.system.clone());
        }
    }

    #[test]
    fn produced_degrees_never_exceed_their_sources(seed in any::<u64>(), k in norm()) {
        let mut p = nested_system(&mut rng(seed), k);
        for _ in 0..6 {
            let (next, trace) = p.tick_traced();
            for app in &trace {
                for (_, _, specified, produced) in &app.produced {
                    prop_assert!(*produced <= app.input_degree);
                    prop_assert!(*produced <= app.rule_degree);
                    prop_assert!(produced <= specified);
                }
            }
            p = next;
        }
    }

    #[test]
    fn crisp_systems_count_objects(seed in any::<u64>(), k in norm()) {
        let p = single_membrane_system(&mut rng(seed), k, true);
        let r = p.run(30).unwrap();
        let reference = crisp_run(&p, 30);
        prop_assert_eq!(r.result, reference.count as f64);
        prop_assert_eq!((r.halted, r.ticks_used), (reference.halted, reference.ticks));
    }

    #[test]
    fn result_is_positive_iff_output_nonempty(seed in any::<u64>(), k in norm()) {
        let p = nested_system(&mut rng(seed), k);
        let r = p.run(20).unwrap();
        prop_assert!(r.result >= 0.0);
        prop_assert_eq!(r.result > 0.0, !r.output_contents.is_empty());
    }

    #[test]
    fn clock_counts_ticks(seed in any::<u64>(), k in norm(), n in 1u64..15) {
        let p = single_membrane_system(&mut rng(seed), k, false);
        let r = p.run(n).unwrap();
        prop_assert_eq!(r.system.clock, r.ticks_used);
        prop_assert!(r.ticks_used <= n);
        prop_assert!(r.halted || r.ticks_used == n);
    }
}

#[test]
fn zero_budget_is_rejected() {
    let p = single_membrane_system(&mut rng(0), NormKind::Minimum, true);
    assert_eq!(p.run(0), Err(FpsError::ZeroBudget));
}
