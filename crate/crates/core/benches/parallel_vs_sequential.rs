use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use svetlichny::bounds::audit_chain_with;
use svetlichny::optimizer::{grid_oracle_with, maximize_with};
use svetlichny::sweep::sweep;
use svetlichny::{gghz_state, ConstraintMode, Exec, GghzParam, OptimizerConfig};

fn execs() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn bench_maximize(c: &mut Criterion) {
    let s = gghz_state(GghzParam::new(0.4).unwrap());
    let cfg = OptimizerConfig::default();
    let mut g = c.benchmark_group("maximize_64_starts");
    for (name, exec) in execs() {
        g.bench_function(name, |b| b.iter(|| maximize_with(black_box(&s), &cfg, exec).unwrap()));
    }
    g.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let cfg = OptimizerConfig::default();
    let mut g = c.benchmark_group("sweep_101_points");
    g.sample_size(10);
    for (name, exec) in execs() {
        g.bench_function(name, |b| {
            b.iter(|| sweep(0.0, std::f64::consts::FRAC_PI_4, black_box(101), &cfg, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_audit(c: &mut Criterion) {
    let mut g = c.benchmark_group("audit_chain");
    g.sample_size(10);
    for n in [100_000usize, 1_000_000] {
        for (name, exec) in execs() {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| audit_chain_with(n, 42, ConstraintMode::SumLeqOne, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_grid(c: &mut Criterion) {
    let s = gghz_state(GghzParam::new(0.6).unwrap());
    let mut g = c.benchmark_group("grid_oracle_8x8");
    g.sample_size(10);
    for (name, exec) in execs() {
        g.bench_function(name, |b| {
            b.iter(|| grid_oracle_with(black_box(&s), 8, 8, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_maximize, bench_sweep, bench_audit, bench_grid);
criterion_main!(benches);
