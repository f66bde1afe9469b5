use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use grnorm_core::ade::ade_parametrization;
use grnorm_core::{gr_chain, make_ade, multiplicative_closure, AdeType};

fn chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("gr_chain");
    for t in [AdeType::A(12), AdeType::D(12), AdeType::E(8)] {
        let ring = make_ade(t).unwrap();
        group.bench_function(t.to_string(), |b| b.iter(|| gr_chain(black_box(&ring)).unwrap()));
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for (t, box_) in [(AdeType::A(12), 16), (AdeType::E(8), 16), (AdeType::D(11), 16)] {
        let (gens, s) = ade_parametrization(t).unwrap();
        let box_ = vec![box_; s];
        group.bench_function(t.to_string(), |b| b.iter(|| multiplicative_closure(black_box(&gens), &box_).unwrap()));
    }
    group.finish();
}

fn conductor(c: &mut Criterion) {
    c.bench_function("conductor/A12", |b| b.iter(|| make_ade(black_box(AdeType::A(12))).unwrap()));
}

criterion_group!(benches, chains, closure, conductor);
criterion_main!(benches);
