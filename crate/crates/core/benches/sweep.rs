use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slideocam_core::optimizer::{sweep, DesignSpace};
use slideocam_core::parallel::Schedule;

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for schedule in [Schedule::Sequential, Schedule::Parallel] {
        let space = DesignSpace {
            resolution: 24,
            schedule,
            ..DesignSpace::default()
        };
        group.bench_with_input(
            BenchmarkId::new("grid24", format!("{schedule:?}")),
            &space,
            |b, space| b.iter(|| sweep(space).expect("default space is valid")),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
