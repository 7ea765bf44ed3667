use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tricon::enumeration::{
    enumerate_no_preserving, enumerate_with_minor, next_level_with_minor, Seed,
};
use tricon::families::{self, FamilySpec};
use tricon::{canonical_code, is_three_connected, MinorTester, OperationMask};
use tricon_bench::all_of_rank;

fn canonical(c: &mut Criterion) {
    let graphs = all_of_rank(6);
    c.bench_function("canonical_code/rank6_all", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| canonical_code(black_box(g)).as_bytes().len())
                .sum::<usize>()
        })
    });
    let petersen = families::petersen();
    c.bench_function("canonical_code/petersen", |b| {
        b.iter(|| canonical_code(black_box(&petersen)))
    });
}

fn connectivity(c: &mut Criterion) {
    let graphs = all_of_rank(6);
    c.bench_function("is_three_connected/rank6_all", |b| {
        b.iter(|| {
            graphs
                .iter()
                .filter(|g| is_three_connected(black_box(g)))
                .count()
        })
    });
}

fn minors(c: &mut Criterion) {
    let graphs = all_of_rank(6);
    c.bench_function("has_minor/prism_rank6_all", |b| {
        b.iter(|| {
            // fresh tester each time so the cache does not hide the search
            let tester = MinorTester::new(families::prism());
            graphs.iter().filter(|g| tester.has_minor(g)).count()
        })
    });
}

fn levels(c: &mut Criterion) {
    let mut group = c.benchmark_group("level_expansion");
    group.sample_size(10);
    let base = enumerate_with_minor(&families::prism(), 6).unwrap();
    group.bench_function("with_minor_rank7", |b| {
        b.iter(|| next_level_with_minor(base.last().unwrap()).len())
    });
    for r in [7, 8] {
        group.bench_with_input(BenchmarkId::new("no_preserving", r), &r, |b, &r| {
            b.iter(|| {
                enumerate_no_preserving(&Seed::Family(FamilySpec::prism()), r, OperationMask::ALL)
                    .unwrap()
                    .len()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, canonical, connectivity, minors, levels);
criterion_main!(benches);
