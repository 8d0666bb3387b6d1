use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use trilinear::{betti_fingerprint, classify, decide, invert, oracle};
use trilinear_bench::workload;

fn bench_decide(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide");
    for (id, phi) in workload() {
        g.bench_with_input(BenchmarkId::from_parameter(id), &phi, |b, phi| b.iter(|| decide(black_box(phi))));
    }
    g.finish();
}

fn bench_invert(c: &mut Criterion) {
    let mut g = c.benchmark_group("invert");
    for (id, phi) in workload().into_iter().filter(|(id, _)| *id != "negative") {
        g.bench_with_input(BenchmarkId::from_parameter(id), &phi, |b, phi| b.iter(|| invert(black_box(phi))));
    }
    g.finish();
}

fn bench_classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for (id, phi) in workload().into_iter().filter(|(id, _)| *id != "negative") {
        g.bench_with_input(BenchmarkId::from_parameter(id), &phi, |b, phi| b.iter(|| classify(black_box(phi))));
    }
    g.finish();
}

fn bench_fingerprint(c: &mut Criterion) {
    let mut g = c.benchmark_group("fingerprint");
    g.sample_size(10);
    for (id, phi) in workload() {
        g.bench_with_input(BenchmarkId::new("box 3", id), &phi, |b, phi| {
            b.iter(|| betti_fingerprint(black_box(phi), [3, 3, 3]))
        });
    }
    g.finish();
}

fn bench_fiber(c: &mut Criterion) {
    let mut g = c.benchmark_group("fiber");
    g.sample_size(10);
    for (id, phi) in workload() {
        g.bench_with_input(BenchmarkId::from_parameter(id), &phi, |b, phi| {
            b.iter(|| oracle::fiber_at_random_target(black_box(phi), 0))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_decide, bench_invert, bench_classify, bench_fingerprint, bench_fiber);
criterion_main!(benches);
