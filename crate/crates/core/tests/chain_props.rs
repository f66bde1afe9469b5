mod common;

use grnorm_core::{gr_chain, n_of, AlgebroidCurve};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn chain_is_strict_and_ends_normal(curve in common::plane_curve()) {
        let a = common::plane_ring(&curve);
        let report = gr_chain(&a).unwrap();
        prop_assert!(report.n <= a.delta_invariant());
        prop_assert!(report.last().ring.is_normal());
        for pair in report.steps.windows(2) {
            prop_assert!(pair[1].dim_over_previous >= 1);
            prop_assert!(pair[1].delta < pair[0].delta);
        }
    }

    #[test]
    fn monomial_chain_telescopes(exps in common::monomial_curve()) {
        let a = common::monomial_ring(&exps);
        let report = gr_chain(&a).unwrap();
        let total: usize = report.steps.iter().map(|s| s.dim_over_previous).sum();
        prop_assert_eq!(total, a.delta_invariant());
        prop_assert!(report.steps.iter().all(|s| s.gr_criterion));
    }

    #[test]
    fn branch_order_does_not_matter(curve in common::plane_curve()) {
        let a = common::plane_ring(&curve);
        let order: Vec<usize> = (0..curve.len()).rev().collect();
        let b = a.permute_branches(&order).unwrap();
        prop_assert_eq!(n_of(&a).unwrap(), n_of(&b).unwrap());
        let reversed: Vec<_> = order.iter().map(|&i| curve[i]).collect();
        prop_assert!(b.ring_equals(&common::plane_ring(&reversed)).unwrap());
    }

    #[test]
    fn conductor_endomorphisms_are_normal(curve in common::plane_curve()) {
        let a = common::plane_ring(&curve);
        let end = a.endomorphism_ring(&a.conductor_ideal()).unwrap();
        prop_assert!(end.ring_equals(&AlgebroidCurve::normalization(curve.len())).unwrap());
    }
}
