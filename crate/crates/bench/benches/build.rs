use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jr_bench::{pair, Family};
use jr_core::index::{index_pathcover, index_tree_path, index_two_paths, index_two_trees};
use jr_core::{build_pathcover, build_tree_path, build_two_paths, build_two_trees, build_unoriented_trees};

fn explicit(c: &mut Criterion) {
    let mut group = c.benchmark_group("explicit");
    group.sample_size(10);
    for f in Family::ALL {
        for n in [1 << 8, 1 << 11, 1 << 14] {
            let (g1, g2) = pair(f, n, 1);
            let build = match f {
                Family::Bitrev => build_two_paths,
                Family::TreePath => build_tree_path,
                Family::TwoTrees => build_two_trees,
                Family::Unoriented => build_unoriented_trees,
                Family::Pathcover => build_pathcover,
            };
            group.bench_with_input(BenchmarkId::new(f.name(), n), &n, |b, _| b.iter(|| build(&g1, &g2).unwrap()));
        }
    }
    group.finish();
}

fn index(c: &mut Criterion) {
    let mut group = c.benchmark_group("index");
    group.sample_size(10);
    for f in Family::ALL {
        for n in [1 << 8, 1 << 11, 1 << 14] {
            let (g1, g2) = pair(f, n, 1);
            let build = match f {
                Family::Bitrev => index_two_paths,
                Family::TreePath => index_tree_path,
                Family::TwoTrees | Family::Unoriented => index_two_trees,
                Family::Pathcover => index_pathcover,
            };
            group.bench_with_input(BenchmarkId::new(f.name(), n), &n, |b, _| b.iter(|| build(&g1, &g2).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, explicit, index);
criterion_main!(benches);
