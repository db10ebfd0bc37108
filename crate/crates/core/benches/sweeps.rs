//! Sequential against parallel execution of the seeded sweeps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kepler_sym::expr::ZeroTest;
use kepler_sym::invariants::{power_law_scan, ScanKind};
use kepler_sym::par::Execution;
use kepler_sym::verify::{self, Suite, VerifyConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for suite in [Suite::Symmetry, Suite::Theorems, Suite::Maps] {
        for (name, exec) in MODES {
            let config = VerifyConfig { seed: 7, exec, ..VerifyConfig::default() };
            group.bench_with_input(BenchmarkId::new(suite.name(), name), &config, |b, config| {
                b.iter(|| black_box(verify::run(suite, config)))
            });
        }
    }
    group.finish();
}

fn scans(c: &mut Criterion) {
    let alphas: Vec<f64> = (0..25).map(|i| -3.0 + 0.25 * i as f64).collect();
    let test = ZeroTest::default();
    let mut group = c.benchmark_group("power-law-scan");
    group.sample_size(10);
    for kind in [ScanKind::Wunschmann, ScanKind::ZeroEFlat] {
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(format!("{kind:?}"), name), |b| {
                b.iter(|| black_box(power_law_scan(&alphas, kind, &test, exec).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites, scans);
criterion_main!(benches);
