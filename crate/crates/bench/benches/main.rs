use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use clutters::{
    check_linear_quotients, exists_linear_quotients_ordering, is_cohen_macaulay, PrimeField,
    SquareFreeIdeal,
};
use clutters_bench::{counterexample_g4, homology_graph, limits, search_instance, small_instance};

fn bench_covers(c: &mut Criterion) {
    let lim = limits();
    let small = small_instance();
    let big = counterexample_g4();
    c.bench_function("covers/fixture_g3", |b| {
        b.iter(|| black_box(small.clutter().minimal_vertex_covers(&lim).unwrap()))
    });
    c.bench_function("covers/counterexample_g4", |b| {
        b.iter(|| black_box(big.clutter().minimal_vertex_covers(&lim).unwrap()))
    });
}

fn bench_linear_quotients(c: &mut Criterion) {
    let lim = limits();
    let inst = small_instance();
    let dual = SquareFreeIdeal::cover_ideal(inst.clutter(), &lim).unwrap();
    let perm =
        clutters::sort_by_named_ordering(inst.grid(), &dual, clutters::NamedOrdering::PaperG3)
            .unwrap();
    c.bench_function("linquot/check_fixture_dual", |b| {
        b.iter(|| black_box(check_linear_quotients(&dual, &perm).unwrap()))
    });

    let search = search_instance();
    let search_dual = SquareFreeIdeal::cover_ideal(search.clutter(), &lim).unwrap();
    c.bench_function("linquot/ordering_search", |b| {
        b.iter(|| black_box(exists_linear_quotients_ordering(&search_dual, &lim).unwrap()))
    });
}

fn bench_homology(c: &mut Criterion) {
    let lim = limits();
    let field = PrimeField::new(2).unwrap();
    let cycle = homology_graph();
    c.bench_function("cm/reisner_cycle12", |b| {
        b.iter(|| black_box(is_cohen_macaulay(&cycle, field, &lim).unwrap()))
    });
    let fixture = small_instance();
    c.bench_function("cm/reisner_fixture_g3", |b| {
        b.iter(|| black_box(is_cohen_macaulay(fixture.clutter(), field, &lim).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_covers,
    bench_linear_quotients,
    bench_homology
);
criterion_main!(benches);
