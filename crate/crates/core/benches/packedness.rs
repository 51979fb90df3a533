use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cpack_core::oracle::grid_lower_bound_with;
use cpack_core::{approx2_with, approx6_with, synth, Approx6Options, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_approx2(c: &mut Criterion) {
    let mut group = c.benchmark_group("approx2");
    group.sample_size(10);
    for n in [100usize, 400] {
        let pi = synth::random_curve(&mut synth::rng(n as u64), n, 2, 100.0);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &pi, |b, pi| b.iter(|| approx2_with(pi, exec)));
        }
    }
    group.finish();
}

fn bench_grid_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid_oracle");
    group.sample_size(10);
    let pi = synth::random_curve(&mut synth::rng(7), 30, 2, 10.0);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, 64), |b| b.iter(|| grid_lower_bound_with(&pi, 64, exec).unwrap()));
    }
    group.finish();
}

fn bench_approx6(c: &mut Criterion) {
    let mut group = c.benchmark_group("approx6");
    group.sample_size(10);
    for n in [50usize, 150] {
        let pi = synth::random_curve(&mut synth::rng(n as u64), n, 2, 100.0);
        for (name, exec) in MODES {
            let mut opts = Approx6Options::new(1.0);
            opts.exec = exec;
            group.bench_with_input(BenchmarkId::new(name, n), &pi, |b, pi| b.iter(|| approx6_with(pi, &opts).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, bench_approx2, bench_grid_oracle, bench_approx6);
criterion_main!(benches);
