use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indcomplex::capacity::{power_alpha, DEFAULT_BUDGET};
use indcomplex::{persistence_slice, ChainSlice, GraphLike, Rationals, SliceDirection, Window, WindowComplex, WindowGraph};
use indcomplex_bench::{pentagon, random_digraph, square_lattice};
use std::hint::black_box;

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_table");
    for n in [50, 200, 500] {
        let g = random_digraph(n, 4.0 / n as f64, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| black_box(g.distance_table())));
    }
    group.finish();
}

fn complexes(c: &mut Criterion) {
    let t = square_lattice(6).distance_table();
    c.bench_function("window_complex/lattice6/2:inf", |b| {
        b.iter(|| black_box(WindowComplex::from_table(&t, Window::up_to_infinity(2).unwrap(), 4).counts()))
    });
}

fn alpha(c: &mut Criterion) {
    let g = pentagon();
    let mut group = c.benchmark_group("alpha_pentagon_power");
    for p in [2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| black_box(power_alpha(&g, Window::classical(), p, DEFAULT_BUDGET).unwrap()))
        });
    }
    group.finish();
}

fn path_homology(c: &mut Criterion) {
    let g = random_digraph(12, 0.2, 3);
    let wg = WindowGraph::of(&g, Window::new(1, 3).unwrap());
    c.bench_function("path_homology/random12/1:3", |b| {
        b.iter(|| black_box(ChainSlice::new(Rationals, &wg, 3).unwrap().report()))
    });
}

fn persistence(c: &mut Criterion) {
    let t = random_digraph(16, 0.15, 11).distance_table();
    c.bench_function("persistence/random16/n_slice", |b| {
        b.iter(|| black_box(persistence_slice(&Rationals, &t, SliceDirection::NDecreasing, 2)))
    });
}

criterion_group!(benches, distances, complexes, alpha, path_homology, persistence);
criterion_main!(benches);
