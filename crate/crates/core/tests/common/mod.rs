#![allow(dead_code)]

use grnorm_core::series::{scalar, BranchSeries};
use grnorm_core::{AlgebroidCurve, MultiElement};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// Plane branch `x = t^a`, `y = c t^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlaneBranch {
    pub a: u32,
    pub b: u32,
    pub c: i64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn plane_branch() -> impl Strategy<Value = PlaneBranch> {
    (1u32..=5, 1u32..=7, 1i64..=4)
        .prop_filter("primitive", |&(a, b, _)| gcd(a, b) == 1)
        .prop_map(|(a, b, c)| PlaneBranch { a, b, c })
}

/// Conductor of the plane curve: `gamma_i = (a_i - 1)(b_i - 1) + sum_j I(B_i, B_j)`
/// with intersection numbers `I = min(a_i b_j, a_j b_i)`.
pub fn plane_gamma(branches: &[PlaneBranch]) -> Vec<u32> {
    branches
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let own = (p.a - 1) * (p.b - 1);
            let meet: u32 = branches
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| (p.a * q.b).min(q.a * p.b))
                .sum();
            own + meet
        })
        .collect()
}

/// Largest total conductor admitted by [`plane_curve`].
pub const PLANE_GAMMA_BUDGET: u32 = 20;

/// One to three distinct plane branches through the origin, kept small.
pub fn plane_curve() -> impl Strategy<Value = Vec<PlaneBranch>> {
    proptest::collection::btree_set(plane_branch(), 1..=3)
        .prop_map(|set| set.into_iter().collect::<Vec<_>>())
        .prop_filter("small conductor", |b| plane_gamma(b).iter().sum::<u32>() <= PLANE_GAMMA_BUDGET)
}

pub fn plane_generators(branches: &[PlaneBranch]) -> Vec<MultiElement> {
    let x = MultiElement::new(branches.iter().map(|p| BranchSeries::monomial(p.a)).collect());
    let y = MultiElement::new(branches.iter().map(|p| BranchSeries::term(scalar(p.c), p.b)).collect());
    vec![x, y]
}

pub fn plane_ring(branches: &[PlaneBranch]) -> AlgebroidCurve {
    AlgebroidCurve::from_parametrization(plane_generators(branches), branches.len()).expect("valid plane curve")
}

/// Generator exponents of a monomial curve `K[[t^e1, ..., t^er]]`.
pub fn monomial_curve() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::btree_set(2u32..=9, 2..=4)
        .prop_map(|set| set.into_iter().collect::<Vec<u32>>())
        .prop_filter("coprime", |e| e.iter().fold(0, |g, &x| gcd(g, x)) == 1)
}

pub fn monomial_ring(exponents: &[u32]) -> AlgebroidCurve {
    let gens = exponents.iter().map(|&e| MultiElement::new(vec![BranchSeries::monomial(e)])).collect();
    AlgebroidCurve::from_parametrization(gens, 1).expect("valid monomial curve")
}

/// `count` deterministic samples of `strategy`.
pub fn samples<S: Strategy>(strategy: S, count: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..count).map(|_| strategy.new_tree(&mut runner).expect("strategy").current()).collect()
}
