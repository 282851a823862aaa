use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dcbo_bench::{lattice_fixture, mixed_fixture, separable_fixture};
use dcbo_core::*;

/// The certification gate is benchmarked separately; solver benches skip it
/// to time the walk itself.
fn walk_opts() -> SolveOptions {
    SolveOptions { unchecked: true, ..Default::default() }
}

fn bench_walks(c: &mut Criterion) {
    let mut group = c.benchmark_group("transition_walks");
    for (n, r) in [(8, 4), (10, 5), (12, 6)] {
        let (oracle, weights) = lattice_fixture(Kind::Mbb, 7, n, r);
        group.bench_with_input(BenchmarkId::new("general", n), &n, |b, _| {
            b.iter(|| solve_mnatbb(&oracle, &weights, &walk_opts()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("restricted", n), &n, |b, _| {
            b.iter(|| solve_mbb(&oracle, &weights, &walk_opts()).unwrap())
        });
    }
    let (oracle, weights) = separable_fixture(7, 5, 2);
    group.bench_function("general_separable_n5", |b| {
        b.iter(|| solve_mnatbb(&oracle, &weights, &walk_opts()).unwrap())
    });
    group.finish();
}

fn bench_mixed(c: &mut Criterion) {
    let mut group = c.benchmark_group("mixed_order");
    for (label, source) in [
        ("bases", FamilySource::Bases),
        ("independent", FamilySource::IndependentSets),
        ("window", FamilySource::Window),
    ] {
        let (oracle, family, partition) = mixed_fixture(11, 8, 2, source);
        group.bench_function(BenchmarkId::new("solve", label), |b| {
            b.iter(|| solve_mlb(&oracle, &family, &partition, &walk_opts()).unwrap())
        });
    }
    group.finish();
}

fn bench_oracle_and_verifiers(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_and_verifiers");
    let (oracle, weights) = lattice_fixture(Kind::Mbb, 3, 10, 5);
    group.bench_function("brute_pareto_2d_n10", |b| {
        b.iter(|| brute_pareto_2d(&oracle, &weights, DEFAULT_ENUM_CAP).unwrap())
    });
    group.bench_function("verify_m_n10", |b| {
        b.iter(|| verify_m(&oracle, DEFAULT_ENUM_CAP).unwrap())
    });
    let (oracle, _) = separable_fixture(3, 4, 2);
    group.bench_function("verify_mnat_separable", |b| {
        b.iter(|| verify_mnat(&oracle, DEFAULT_ENUM_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_walks, bench_mixed, bench_oracle_and_verifiers);
criterion_main!(benches);
