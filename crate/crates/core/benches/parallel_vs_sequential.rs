use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kummer_core::chamber_geometry::{face_sweep, orbit_representatives, round_trips};
use kummer_core::exec::Execution;
use kummer_core::threefold_lattice::compatibility_all;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn threefold(c: &mut Criterion) {
    let mut g = c.benchmark_group("threefold_intertwining");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(compatibility_all(exec))));
    }
    g.finish();
}

fn homing(c: &mut Criterion) {
    let mut g = c.benchmark_group("homing_round_trips");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(round_trips(20, 6, 7, None, exec)))
        });
    }
    g.finish();
}

fn faces(c: &mut Criterion) {
    let walls: Vec<usize> = orbit_representatives().into_iter().map(|(w, _)| w).collect();
    let mut g = c.benchmark_group("face_sweep_representatives");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(face_sweep(&walls, exec))));
    }
    g.finish();
}

criterion_group!(benches, threefold, homing, faces);
criterion_main!(benches);
