use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laurent_lab::trace::{trace_distance_bruteforce, trace_distance_symmetric, EnsembleSpec};

fn routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("trace_distance");
    for (l, w, k) in [(12u64, 3u64, 3u32), (14, 3, 2)] {
        let spec = EnsembleSpec::new(l, w, k).unwrap();
        let id = format!("{l}-{w}-{k}");
        g.bench_with_input(BenchmarkId::new("symmetric", &id), &spec, |b, s| {
            b.iter(|| trace_distance_symmetric(black_box(s)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("bruteforce", &id), &spec, |b, s| {
            b.iter(|| trace_distance_bruteforce(black_box(s)).unwrap())
        });
    }
    g.bench_function("symmetric/64-16-4", |b| {
        let spec = EnsembleSpec::new(64, 16, 4).unwrap();
        b.iter(|| trace_distance_symmetric(black_box(&spec)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, routes);
criterion_main!(benches);
