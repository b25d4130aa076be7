use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laurent_lab::qsim::{full_curve, projection_distinguisher, AlgorithmSpec};

fn curve(c: &mut Criterion) {
    let mut g = c.benchmark_group("full_curve");
    for n in [6usize, 8] {
        let alg = AlgorithmSpec::projection(n).unwrap();
        g.bench_with_input(BenchmarkId::new("projection", n), &alg, |b, alg| {
            b.iter(|| full_curve(black_box(alg)).unwrap())
        });
    }
    g.finish();
}

fn projection(c: &mut Criterion) {
    c.bench_function("projection_distinguisher/1024/32", |b| {
        b.iter(|| projection_distinguisher(black_box(1024), 32, 1).unwrap())
    });
}

criterion_group!(benches, curve, projection);
criterion_main!(benches);
