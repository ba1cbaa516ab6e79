//! Sequential vs rayon execution for the data-parallel parts of the solver:
//! weight tables, the CN time loop and a refinement study.

use abel_pide::experiments::{converge_time, convergence_model};
use abel_pide::{simulate, Execution, ExponentSpec, KernelFamily, MemoryWeights, Scheme, TimeGrid};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const POLICIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_weights(c: &mut Criterion) {
    let mut group = c.benchmark_group("memory_weights");
    let family = KernelFamily::Multiscale(ExponentSpec::linear(1.0, -0.8, 1.0).unwrap());
    for steps in [256usize, 1024, 4096] {
        let grid = TimeGrid::new(1.0, steps).unwrap();
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, steps), &grid, |b, g| {
                b.iter(|| MemoryWeights::compute_with(black_box(family), *g, 1e-12, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_cn_run(c: &mut Criterion) {
    let mut group = c.benchmark_group("cn_run");
    group.sample_size(10);
    for steps in [256usize, 512, 1024] {
        let cfg = convergence_model(Scheme::Cn2).with_steps(steps);
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, steps), &cfg, |b, cfg| {
                b.iter(|| simulate(black_box(cfg), 1e-12, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_convergence_study(c: &mut Criterion) {
    let mut group = c.benchmark_group("converge_time");
    group.sample_size(10);
    let base = convergence_model(Scheme::Cn2);
    let levels = [64usize, 128, 256, 512];
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| converge_time(black_box(&base), &levels, 1e-12, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_weights, bench_cn_run, bench_convergence_study);
criterion_main!(benches);
