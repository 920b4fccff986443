use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genobound_bench::unit_sample;
use genobound_core::stats::{holm_adjust, ks_uniform, rank_sum, rank_sum_exact};

fn ks(c: &mut Criterion) {
    let mut group = c.benchmark_group("ks_uniform");
    for n in [1_000, 50_000] {
        let sample = unit_sample(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &sample, |b, s| {
            b.iter(|| ks_uniform(black_box(s)).unwrap().p_value)
        });
    }
    group.finish();
}

fn ranks(c: &mut Criterion) {
    let a = unit_sample(50, 5);
    let b = unit_sample(50, 6);
    c.bench_function("rank_sum_normal_50x50", |bench| {
        bench.iter(|| rank_sum(black_box(&a), black_box(&b)).unwrap().p_value)
    });
    let (a, b) = (unit_sample(6, 7), unit_sample(6, 8));
    c.bench_function("rank_sum_exact_6x6", |bench| {
        bench.iter(|| {
            rank_sum_exact(black_box(&a), black_box(&b))
                .unwrap()
                .p_value
        })
    });
    let ps = unit_sample(200, 9);
    c.bench_function("holm_200", |bench| {
        bench.iter(|| holm_adjust(black_box(&ps)).unwrap())
    });
}

criterion_group!(benches, ks, ranks);
criterion_main!(benches);
