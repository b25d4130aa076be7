use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laurent_lab::degree::{fedja_construct, min_degree_lp, validate_fedja};

fn lp(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_degree_lp");
    g.sample_size(10);
    for w in [64usize, 256] {
        g.bench_with_input(BenchmarkId::from_parameter(w), &w, |b, &w| {
            b.iter(|| min_degree_lp(black_box(w), 4 * w).unwrap())
        });
    }
    g.finish();
}

fn construct(c: &mut Criterion) {
    c.bench_function("construct_and_validate/216", |b| {
        b.iter(|| {
            let p = fedja_construct(black_box(216)).unwrap();
            validate_fedja(&p, 216)
        })
    });
}

criterion_group!(benches, lp, construct);
criterion_main!(benches);
