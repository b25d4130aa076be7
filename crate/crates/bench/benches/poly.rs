use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laurent_lab::bounds::markov_check;
use laurent_lab::poly::{chebyshev, int, range_on_interval, rat};

fn range(c: &mut Criterion) {
    let mut g = c.benchmark_group("range_on_interval");
    for d in [8usize, 32, 64] {
        let p = chebyshev(d).derivative();
        g.bench_with_input(BenchmarkId::from_parameter(d), &p, |b, p| {
            b.iter(|| range_on_interval(black_box(p), &int(-1), &int(1), &rat(1, 1 << 40)).unwrap())
        });
    }
    g.finish();
}

fn markov(c: &mut Criterion) {
    let p = chebyshev(33);
    c.bench_function("markov_check/33", |b| {
        b.iter(|| markov_check(black_box(&p), &int(-1), &int(1)).unwrap())
    });
}

criterion_group!(benches, range, markov);
criterion_main!(benches);
