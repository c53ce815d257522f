use binedge_bench::families;
use binedge_core::{build_q, compare, gin_ideal, multiplicities, FieldSpec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn pipeline(c: &mut Criterion) {
    let field = FieldSpec::Rational;
    for (name, g) in families() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function(BenchmarkId::new("build_q", name), |b| b.iter(|| build_q(black_box(&g)).unwrap()));
        group.bench_function(BenchmarkId::new("multiplicities", name), |b| {
            b.iter(|| multiplicities(black_box(&g), field).unwrap())
        });
        group.bench_function(BenchmarkId::new("gin_ideal", name), |b| b.iter(|| gin_ideal(black_box(&g)).unwrap()));
        if g.n() <= 8 {
            group.bench_function(BenchmarkId::new("compare_n4", name), |b| {
                b.iter(|| compare(black_box(&g), field, 4).unwrap())
            });
        }
        group.finish();
    }
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
