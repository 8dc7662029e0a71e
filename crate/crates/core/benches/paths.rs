//! Parallel vs sequential path generation.
//!
//! The `parallel` feature (default) routes `simulate_*` through rayon; the
//! "sequential" series below drives the identical per-path kernels on one
//! thread, so the two series compare the data-parallel speedup directly.
//! Run with `cargo bench --bench paths`.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};

use harris_mo::{
    ar1_path, gamma_ep_path, simulate_ar1, simulate_gamma_ep, ArConfig, BaseDistribution,
    EpConfig, HarrisMax, HarrisParams, PsiFunction, SamplePath,
};

fn ar_config(n_paths: usize) -> ArConfig {
    let base = BaseDistribution::exponential(1.0).unwrap();
    let hp = HarrisParams::new(2.0, 1).unwrap();
    ArConfig::new(0.5, 1, 128, n_paths, Arc::new(HarrisMax::new(base, hp)))
        .unwrap()
        .with_innovations(Arc::new(base))
}

fn ep_config(n_paths: usize) -> EpConfig {
    let grid: Vec<f64> = (1..=32).map(|i| i as f64 / 8.0).collect();
    EpConfig::new(PsiFunction::power(1.0).unwrap(), 1.0, 1.0, grid, n_paths).unwrap()
}

fn bench_ar1(c: &mut Criterion) {
    let n_paths = 4096;
    let cfg = ar_config(n_paths);
    let mut group = c.benchmark_group("ar1_4096x128");
    group.throughput(Throughput::Elements(n_paths as u64));
    group.bench_function("parallel", |b| {
        b.iter(|| simulate_ar1(black_box(&cfg), 7).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            (0..n_paths as u64)
                .map(|i| ar1_path(black_box(&cfg), 7, i))
                .collect::<Vec<SamplePath>>()
        })
    });
    group.finish();
}

fn bench_gamma_ep(c: &mut Criterion) {
    let n_paths = 4096;
    let cfg = ep_config(n_paths);
    let mut group = c.benchmark_group("gamma_ep_4096x32");
    group.throughput(Throughput::Elements(n_paths as u64));
    group.bench_function("parallel", |b| {
        b.iter(|| simulate_gamma_ep(black_box(&cfg), 7).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            (0..n_paths as u64)
                .map(|i| gamma_ep_path(black_box(&cfg), 7, i))
                .collect::<Vec<SamplePath>>()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_ar1, bench_gamma_ep);
criterion_main!(benches);
