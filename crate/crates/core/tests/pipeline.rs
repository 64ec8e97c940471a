//! Generate → serialize → parse → build → verify, for every class pair.

use jr_core::gen::{generate, InstanceKind, InstanceSpec};
use jr_core::index::{index_pathcover, index_planar_st, index_tree_path, index_two_paths, index_two_trees};
use jr_core::{
    build_pathcover, build_tree_path, build_two_paths, build_two_trees, build_unoriented_trees, transitive_closure,
    verify_join_graph, Digraph, JoinGraph,
};

fn instance(kind: InstanceKind, n: usize, seed: u64) -> Digraph {
    let g = generate(&InstanceSpec::new(kind, n, seed)).unwrap().remove(0);
    // Every instance goes through the text format.
    Digraph::parse(&g.to_text()).unwrap()
}

type Builder = fn(&Digraph, &Digraph) -> jr_core::Result<JoinGraph>;

const PAIRS: [(&str, InstanceKind, InstanceKind, Builder); 7] = [
    ("two-paths", InstanceKind::Path, InstanceKind::Path, build_two_paths),
    ("tree-path out", InstanceKind::OutTree, InstanceKind::Path, build_tree_path),
    ("tree-path in", InstanceKind::InTree, InstanceKind::Path, build_tree_path),
    ("two-trees", InstanceKind::OutTree, InstanceKind::InTree, build_two_trees),
    ("unoriented", InstanceKind::UtreeRandom, InstanceKind::UtreeRandom, build_unoriented_trees),
    ("pathcover single", InstanceKind::DagGnp, InstanceKind::Path, build_pathcover),
    ("pathcover double", InstanceKind::DagGnp, InstanceKind::DagGnp, build_pathcover),
];

#[test]
fn explicit_pipeline_every_class_pair() {
    for (name, k1, k2, build) in PAIRS {
        for seed in 0..50u64 {
            let n = 8 + (seed as usize * 7) % 50;
            let (g1, g2) = (instance(k1, n, 2 * seed), instance(k2, n, 2 * seed + 1));
            let j = build(&g1, &g2).unwrap();
            let j = JoinGraph::parse(&j.to_text()).unwrap();
            let rep = verify_join_graph(&j, &g1, &g2).unwrap();
            assert!(rep.passed(), "{name} seed {seed}: {:?}", rep.first());
        }
    }
}

#[test]
fn index_pipeline_every_class_pair() {
    type IndexBuilder = fn(&Digraph, &Digraph) -> jr_core::Result<jr_core::JRIndex>;
    let pairs: [(InstanceKind, InstanceKind, IndexBuilder); 6] = [
        (InstanceKind::Path, InstanceKind::Path, index_two_paths),
        (InstanceKind::UtreeRandom, InstanceKind::Path, index_tree_path),
        (InstanceKind::InTree, InstanceKind::UtreeRandom, index_two_trees),
        (InstanceKind::DagGnp, InstanceKind::OutTree, index_pathcover),
        (InstanceKind::DagGnp, InstanceKind::DagGnp, index_pathcover),
        (InstanceKind::SpSt, InstanceKind::Path, index_planar_st),
    ];
    for (k1, k2, build) in pairs {
        for seed in 0..50u64 {
            let n = 8 + (seed as usize * 5) % 50;
            let (g1, g2) = (instance(k1, n, seed + 100), instance(k2, n, seed + 200));
            let idx = build(&g1, &g2).unwrap();
            let want = transitive_closure(&g1).and(&transitive_closure(&g2)).unwrap();
            for b in 0..n {
                assert_eq!(idx.query(b).unwrap(), want.column(b), "{k1:?}/{k2:?} seed {seed} b {b}");
            }
        }
    }
}

#[test]
fn bitrev_generator_matches_builder_input() {
    let gs = generate(&InstanceSpec::new(InstanceKind::Bitrev, 64, 0)).unwrap();
    assert_eq!(gs.len(), 2);
    let j = build_two_paths(&gs[0], &gs[1]).unwrap();
    assert!(verify_join_graph(&j, &gs[0], &gs[1]).unwrap().passed());
}
