//! Algebraic laws of the configuration-set operations, checked against an
//! independent dominance oracle.

mod common;
mod laws;

use common::*;
use laws::*;
use proptest::collection::vec;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn minimize_matches_brute_force_filter((os, rows) in ordered_set(order(), 1..=4, 200)) {
        laws::minimize_matches_brute_force(&os, &rows)?;
    }

    #[test]
    fn product_preserves_dominance(p in refined_pair(12), b in vec(vec(0i64..6, 2), 1..5)) {
        laws::product_preserves_dominance(&p, &b)?;
    }

    #[test]
    fn safe_constraint_preserves_dominance(p in refined_pair(12), t in 0i64..6) {
        laws::safe_constraint_preserves_dominance(&p, t)?;
    }

    #[test]
    fn derivation_preserves_dominance(p in refined_pair(12)) {
        laws::derivation_preserves_dominance(&p)?;
    }

    #[test]
    fn abstraction_preserves_dominance(p in refined_pair(12), k in 0usize..3) {
        laws::abstraction_preserves_dominance(&p, k)?;
    }

    #[test]
    fn permutation_preserves_dominance(p in refined_pair(12), rot in 0usize..3) {
        laws::permutation_preserves_dominance(&p, rot)?;
    }

    #[test]
    fn alternatives_preserve_dominance(p in refined_pair(12), extra in vec(0i64..6, 1..4)) {
        laws::alternatives_preserve_dominance(&p, &extra)?;
    }

    #[test]
    fn minimality_is_preserved((os, rows) in ordered_set(order(), 1..=3, 20), b in vec(vec(0i64..6, 1), 1..6), t in 0i64..6, rot in 0usize..3) {
        laws::minimality_preservation(&os, &rows, &b, t, rot)?;
    }

    #[test]
    fn refinement_holds_through_pipelines(
        p in refined_pair(8),
        c in vec(0i64..6, 1..4),
        c2 in vec(0i64..3, 1..4),
        stages in vec(stage(4), 1..3),
    ) {
        laws::refinement_through_pipelines(&p, &c, &c2, &stages)?;
    }

    #[test]
    fn derivation_equals_a_constraint((os, rows) in ordered_set(numeric_order(), 1..=3, 20)) {
        laws::derivation_is_a_constraint(&os, &rows)?;
    }
}

#[test]
fn abstraction_and_alternatives_can_break_minimality() {
    assert!(laws::minimality_counterexamples());
}
