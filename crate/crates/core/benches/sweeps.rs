use std::f64::consts::TAU;
use std::hint::black_box;

use cauchy_core::crofton::{bound_sweep_with, length_theorem1_with, random_line_estimate_with};
use cauchy_core::curve::Polyline;
use cauchy_core::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn ngon(n: usize) -> Polyline {
    Polyline::new((0..=n).map(|k| (TAU * k as f64 / n as f64).sin_cos()).map(|(s, c)| (c, s)).collect()).unwrap()
}

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweeps(c: &mut Criterion) {
    let circle = ngon(1000);
    let segment = Polyline::new(vec![(0.0, 0.0), (1.0, 0.0)]).unwrap();
    let ns: Vec<usize> = (2..=7).map(|k| 1 << k).collect();

    let mut g = c.benchmark_group("bound_sweep");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "segment"), &exec, |b, &exec| {
            b.iter(|| bound_sweep_with(black_box(&segment), &ns, 360, exec).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("length_theorem1");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "1000-gon"), &exec, |b, &exec| {
            b.iter(|| length_theorem1_with(black_box(&circle), exec))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("random_lines");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "1000-gon"), &exec, |b, &exec| {
            b.iter(|| random_line_estimate_with(black_box(&circle), 2000, 0, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
