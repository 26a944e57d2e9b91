use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use postnikov_bench::{circle_instance, decide_input};
use postnikov_core::{decide_homotopic, suspension_group_top};

const SIZES: [usize; 4] = [4, 8, 16, 32];

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    for k in SIZES {
        let (inst, f, g) = decide_input(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| decide_homotopic(black_box(&inst), &f, &g).unwrap())
        });
    }
    group.finish();
}

fn susp_group(c: &mut Criterion) {
    let mut group = c.benchmark_group("susp_group");
    for k in SIZES {
        let inst = circle_instance(k, "K(Z,2)");
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| suspension_group_top(black_box(&inst)).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = decide, susp_group
}
criterion_main!(benches);
