use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dffv_core::dffv::{post_process_line, StepSize};
use dffv_core::recon::characteristic_reconstruct;
use dffv_core::{Axis, Euler1D, GasConstants};
use std::hint::black_box;

fn step_1d(c: &mut Criterion) {
    let mut group = c.benchmark_group("sod_step");
    for n in [200, 800, 3200] {
        let (scheme, state) = dffv_bench::sod(n).unwrap();
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| scheme.step(black_box(s), StepSize::Adaptive { until: f64::INFINITY }, 0).unwrap())
        });
    }
    group.finish();
}

fn step_2d(c: &mut Criterion) {
    let mut group = c.benchmark_group("explosion_step");
    group.sample_size(20);
    for n in [64, 128] {
        let (scheme, state) = dffv_bench::explosion(n).unwrap();
        group.throughput(Throughput::Elements((n * n) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| scheme.step(black_box(s), StepSize::Adaptive { until: f64::INFINITY }, 0).unwrap())
        });
    }
    group.finish();
}

fn post_processing(c: &mut Criterion) {
    let (scheme, state) = dffv_bench::sod(1000).unwrap();
    let grid = scheme.grid;
    c.bench_function("post_process_line_1000", |b| {
        b.iter(|| post_process_line(&scheme.system, black_box(&state.u.data), black_box(&state.v.data), grid.n, grid.ghost, grid.dx).unwrap())
    });
}

fn reconstruction(c: &mut Criterion) {
    let sys = Euler1D::new(GasConstants::default());
    let (wm, wc, wp) = ([1.0, 0.0, 1.0], [0.6, 0.3, 0.5], [0.125, 0.0, 0.1]);
    c.bench_function("characteristic_reconstruct", |b| {
        b.iter(|| {
            characteristic_reconstruct(&sys, black_box(&wm), black_box(&wc), black_box(&wp), 0.01, 1.3, Axis::X)
                .unwrap()
        })
    });
}

criterion_group!(benches, step_1d, step_2d, post_processing, reconstruction);
criterion_main!(benches);
