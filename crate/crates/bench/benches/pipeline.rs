use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trigonal_bench::{all_rows, table_sweep};
use trigonal_core::catalog::{assemble_class, residual, Parity};
use trigonal_core::rational::int;
use trigonal_core::{chi, sweep_even, sweep_odd, ChiQuery};

fn bench_sweeps(c: &mut Criterion) {
    c.bench_function("sweep_even n=3..60", |b| {
        b.iter(|| (3..=60).map(|n| sweep_even(black_box(n)).unwrap()).collect::<Vec<_>>())
    });
    c.bench_function("sweep_odd n=3..60", |b| {
        b.iter(|| (3..=60).map(|n| sweep_odd(black_box(n)).unwrap()).collect::<Vec<_>>())
    });
}

fn bench_rows(c: &mut Criterion) {
    let rows = all_rows();
    let t1_5 = rows.iter().find(|r| r.id == "T1.5").unwrap().clone();
    c.bench_function("residual T1.5", |b| {
        b.iter(|| residual(&t1_5, black_box(20), Some(17), &int(50), &int(60)).unwrap())
    });
    let mut group = c.benchmark_group("table_sweep");
    group.sample_size(10);
    for n_max in [10, 30] {
        group.bench_with_input(BenchmarkId::from_parameter(n_max), &n_max, |b, &n_max| {
            b.iter(|| table_sweep(&rows, n_max).len())
        });
    }
    group.finish();
}

fn bench_class(c: &mut Criterion) {
    c.bench_function("assemble_class even g=60", |b| {
        b.iter(|| assemble_class(Parity::Even, black_box(60)).unwrap())
    });
}

fn bench_chi(c: &mut Criterion) {
    let mut group = c.benchmark_group("chi");
    for n in [3, 7, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| chi(ChiQuery::new(n, 1, n - 1).unwrap()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweeps, bench_rows, bench_class, bench_chi);
criterion_main!(benches);
