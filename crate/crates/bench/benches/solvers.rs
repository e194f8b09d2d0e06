use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use mcst_bench::{chorded_cycle, cograph_expression, interval_instance, sat_gadget, width_three_expression};
use mcst_core::cliquewidth::{solve_cliquewidth, DEFAULT_TABLE_CAP};
use mcst_core::interval::solve_interval;
use mcst_core::oracle::{tau_star, DEFAULT_ORACLE_BOUND};

fn interval(c: &mut Criterion) {
    let mut group = c.benchmark_group("interval");
    for n in [10_000, 50_000, 100_000, 200_000] {
        let (g, ord) = interval_instance(n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_interval(black_box(&g), black_box(&ord), false).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_star");
    group.sample_size(20);
    for n in [12, 16, 20] {
        let g = chorded_cycle(n);
        group.bench_with_input(BenchmarkId::new("chorded_cycle", n), &n, |b, _| {
            b.iter(|| tau_star(black_box(&g), DEFAULT_ORACLE_BOUND).unwrap())
        });
    }
    let g = sat_gadget(2);
    group.bench_function("sat_gadget_2", |b| b.iter(|| tau_star(black_box(&g), DEFAULT_ORACLE_BOUND).unwrap()));
    group.finish();
}

fn cliquewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("cliquewidth");
    group.sample_size(20);
    for n in [8, 16, 32] {
        let tree = cograph_expression(n);
        group.bench_with_input(BenchmarkId::new("cograph", n), &n, |b, _| {
            b.iter(|| solve_cliquewidth(black_box(&tree), 0, DEFAULT_TABLE_CAP).unwrap())
        });
        let tree = width_three_expression(n);
        group.bench_with_input(BenchmarkId::new("width3", n), &n, |b, _| {
            b.iter(|| solve_cliquewidth(black_box(&tree), 0, DEFAULT_TABLE_CAP).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, interval, oracle, cliquewidth);
criterion_main!(benches);
