use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kneading::angle::Angle;
use kneading::corpus::{certified_pairs, eventually_periodic_corpus};
use kneading::entropy::entropy_exact;
use kneading::holder::{holder_scan, monotonicity_sweep};
use kneading::par::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn corpus_entropy(c: &mut Criterion) {
    let corpus = eventually_periodic_corpus(1, 400, 12);
    let mut g = c.benchmark_group("corpus_entropy");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| exec.map(&corpus, |nu| entropy_exact(black_box(nu)).unwrap().value))
        });
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let theta = Angle::from_ratio(1, 6).unwrap();
    let mut g = c.benchmark_group("holder_scan");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| holder_scan(black_box(&theta), 4, 16, &[1, 3], exec).unwrap())
        });
    }
    g.finish();
}

fn monotonicity(c: &mut Criterion) {
    let pairs = certified_pairs(2, 100, 10);
    let mut g = c.benchmark_group("monotonicity_sweep");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| monotonicity_sweep(black_box(&pairs), 40, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, corpus_entropy, scan, monotonicity);
criterion_main!(benches);
