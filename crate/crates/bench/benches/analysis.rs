use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use structctl::{
    bipartite_of, dilation_sets, maximum_matching, scc_decompose, select_driver_nodes, NodeSet,
};
use structctl_bench::{er_graph, scale_free_graph, small_world_graph, SIZES};

fn matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("matching");
    for n in SIZES {
        let b = bipartite_of(&er_graph(n, 3.0, 7));
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("er-deg3", n), &b, |bench, b| {
            bench.iter(|| maximum_matching(black_box(b)))
        });
    }
    group.finish();
}

fn scc(c: &mut Criterion) {
    let mut group = c.benchmark_group("scc");
    for n in SIZES {
        let g = er_graph(n, 3.0, 7);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("er-deg3", n), &g, |bench, g| {
            bench.iter(|| scc_decompose(black_box(g)))
        });
    }
    group.finish();
}

fn dilation(c: &mut Criterion) {
    let mut group = c.benchmark_group("dilation");
    for n in SIZES {
        let g = er_graph(n, 3.0, 7);
        group.bench_with_input(BenchmarkId::new("er-deg3", n), &g, |bench, g| {
            bench.iter(|| dilation_sets(black_box(g)))
        });
    }
    group.finish();
}

fn analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analysis");
    group.sample_size(20);
    let none = NodeSet::new();
    let cases = [
        ("er-deg3", er_graph(10_000, 3.0, 7)),
        ("sf-m2", scale_free_graph(10_000, 2, 7)),
        ("sw-k4", small_world_graph(10_000, 4, 0.1, 7)),
    ];
    for (name, g) in &cases {
        group.bench_with_input(BenchmarkId::new(*name, 10_000), g, |bench, g| {
            bench.iter(|| select_driver_nodes(black_box(g), &none).expect("feasible"))
        });
    }
    group.finish();
}

criterion_group!(benches, matching, scc, dilation, analysis);
criterion_main!(benches);
