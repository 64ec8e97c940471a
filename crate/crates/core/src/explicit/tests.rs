use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gen::{random_dag, random_path, random_rooted_tree, random_upath, random_utree};
use crate::graph::{dfs_intervals, Orientation, RootedTree, TreeParts};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn assert_ok(j: &JoinGraph, g1: &Digraph, g2: &Digraph) {
    let r = verify_join_graph(j, g1, g2).unwrap();
    assert!(r.passed(), "first violation {:?}", r.first());
}

fn linear_bound(n: usize) -> usize {
    3 * n * (ceil_log2(n) + 1)
}

fn random_orient(rng: &mut ChaCha8Rng) -> Orientation {
    if rng.gen_bool(0.5) {
        Orientation::Out
    } else {
        Orientation::In
    }
}

#[test]
fn two_paths_identical_and_reversed() {
    let p = Digraph::from_path(&[4, 2, 0, 1, 3]).unwrap();
    let j = build_two_paths(&p, &p).unwrap();
    assert_eq!(j.closure_on_originals(), transitive_closure(&p));
    let j = build_two_paths(&p, &p.reverse()).unwrap();
    assert_eq!(j.closure_on_originals(), ReachMatrix::identity(5));
}

#[test]
fn two_paths_bitreversal_is_grid_dominance() {
    let (p1, p2) = gen_bitreversal(16).unwrap();
    let map = RankSpaceMap::from_paths(&p1, &p2).unwrap();
    let got = build_two_paths(&p1, &p2).unwrap().closure_on_originals();
    for a in 0..16 {
        for b in 0..16 {
            assert_eq!(got.get(a, b), map.dominates(a, b));
        }
    }
}

#[test]
fn two_paths_random_within_bound() {
    let mut r = rng(101);
    for _ in 0..200 {
        let n = r.gen_range(1..=64);
        let (p1, p2) = (random_path(n, &mut r), random_path(n, &mut r));
        let j = build_two_paths(&p1, &p2).unwrap();
        assert_ok(&j, &p1, &p2);
        assert!(j.size() <= linear_bound(n), "size {} n {n}", j.size());
        // Steiner vertices stand for items on the upper side of their split.
        let map = RankSpaceMap::from_paths(&p1, &p2).unwrap();
        for t in j.steiner() {
            assert!(map.x1[t.anchor] as i64 >= t.split);
        }
    }
}

#[test]
fn tree_path_examples() {
    let chain = Digraph::from_path(&[0, 1, 2, 3]).unwrap();
    let j = build_tree_path(&chain, &chain).unwrap();
    assert_eq!(j.closure_on_originals(), transitive_closure(&chain));
    // Out-star whose root comes last on the path.
    let star = Digraph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let p = Digraph::from_path(&[1, 2, 3, 4, 0]).unwrap();
    let j = build_tree_path(&star, &p).unwrap();
    assert_eq!(j.closure_on_originals(), ReachMatrix::identity(5));
}

#[test]
fn tree_path_random() {
    let mut r = rng(103);
    for _ in 0..200 {
        let n = r.gen_range(1..=64);
        let o = random_orient(&mut r);
        let (t, p) = (random_rooted_tree(n, o, &mut r), random_path(n, &mut r));
        let j = build_tree_path(&t, &p).unwrap();
        assert_ok(&j, &t, &p);
        assert!(j.size() <= linear_bound(n), "size {} n {n}", j.size());
    }
}

#[test]
fn two_trees_examples() {
    let mut r = rng(107);
    for _ in 0..20 {
        let n = r.gen_range(1..=40);
        let t = random_rooted_tree(n, Orientation::Out, &mut r);
        let j = build_two_trees(&t, &t).unwrap();
        assert_eq!(j.closure_on_originals(), transitive_closure(&t));
        let p = random_path(n, &mut r);
        let a = build_two_trees(&t, &p).unwrap().closure_on_originals();
        let b = build_tree_path(&t, &p).unwrap().closure_on_originals();
        assert_eq!(a, b);
    }
}

#[test]
fn two_trees_random_all_orientations() {
    let mut r = rng(109);
    for i in 0..200 {
        let n = r.gen_range(1..=64);
        let o1 = if i % 2 == 0 { Orientation::Out } else { Orientation::In };
        let o2 = if i % 4 < 2 { Orientation::Out } else { Orientation::In };
        let (t1, t2) = (random_rooted_tree(n, o1, &mut r), random_rooted_tree(n, o2, &mut r));
        let j = build_two_trees(&t1, &t2).unwrap();
        assert_ok(&j, &t1, &t2);
        let l = ceil_log2(n) + 1;
        assert!(j.size() <= 4 * n * l * l, "size {} n {n}", j.size());
    }
}

#[test]
fn unoriented_trees_rooted_inputs() {
    let mut r = rng(113);
    for _ in 0..20 {
        let n = r.gen_range(1..=40);
        let (t1, t2) =
            (random_rooted_tree(n, Orientation::In, &mut r), random_rooted_tree(n, Orientation::Out, &mut r));
        let j = build_unoriented_trees(&t1, &t2).unwrap();
        assert_ok(&j, &t1, &t2);
        assert_eq!(j.closure_on_originals(), build_two_trees(&t1, &t2).unwrap().closure_on_originals());
    }
}

#[test]
fn unoriented_trees_random() {
    let mut r = rng(127);
    for i in 0..200 {
        let n = r.gen_range(1..=64);
        let g1 = random_utree(n, &mut r);
        let g2 = if i % 3 == 0 { random_upath(n, &mut r) } else { random_utree(n, &mut r) };
        let j = build_unoriented_trees(&g1, &g2).unwrap();
        assert_ok(&j, &g1, &g2);
        let (a, b) = (TreeParts::new(&g1).unwrap(), TreeParts::new(&g2).unwrap());
        for v in 0..n {
            assert!(a.of_vertex(v).len() * b.of_vertex(v).len() <= 4);
        }
    }
}

#[test]
fn pathcover_examples() {
    let mut r = rng(131);
    let n = 20;
    let p1 = random_path(n, &mut r);
    let p2 = random_path(n, &mut r);
    let a = build_pathcover(&p1, &p2).unwrap().closure_on_originals();
    assert_eq!(a, build_two_paths(&p1, &p2).unwrap().closure_on_originals());
    let anti = Digraph::new(n, []).unwrap();
    let j = build_pathcover(&anti, &p2).unwrap();
    assert_eq!(j.closure_on_originals(), ReachMatrix::identity(n));
    let cyc = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
    assert_eq!(build_pathcover(&cyc, &Digraph::from_path(&[0, 1]).unwrap()).unwrap_err(), Error::Cyclic);
}

#[test]
fn pathcover_random_single_and_double() {
    let mut r = rng(137);
    for i in 0..400 {
        let n = r.gen_range(1..=64);
        let g1 = random_dag(n, r.gen_range(0.05..0.4), &mut r);
        let g2 = if i % 2 == 0 { random_path(n, &mut r) } else { random_dag(n, r.gen_range(0.05..0.4), &mut r) };
        let j = build_pathcover(&g1, &g2).unwrap();
        assert_ok(&j, &g1, &g2);
    }
}

#[test]
fn verify_detects_mutations() {
    let mut r = rng(139);
    let (p1, p2) = (random_path(24, &mut r), random_path(24, &mut r));
    let j = build_two_paths(&p1, &p2).unwrap();
    assert_ok(&j, &p1, &p2);
    let want = j.closure_on_originals();
    // Deleting an arc out of an original either breaks some pair or is redundant.
    let mut broke = 0;
    for (k, &(u, v)) in j.graph().arcs().iter().enumerate() {
        let arcs = j.graph().arcs().iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &a)| a);
        let g = Digraph::new(j.graph().n(), arcs).unwrap();
        let m = JoinGraph::from_parts(g, 24, j.steiner().to_vec()).unwrap();
        let rep = verify_join_graph(&m, &p1, &p2).unwrap();
        if m.closure_on_originals() != want {
            broke += 1;
            let f = rep.first().expect("violation reported");
            assert!(f.expected && want.get(f.a, f.b));
        } else {
            assert!(rep.passed(), "redundant arc ({u},{v}) flagged");
        }
    }
    assert!(broke > 0);
    // A spurious arc between unrelated originals.
    let (a, b) = (0..24)
        .flat_map(|a| (0..24).map(move |b| (a, b)))
        .find(|&(a, b)| !want.get(a, b))
        .unwrap();
    let mut arcs = j.graph().arcs().to_vec();
    arcs.push((a, b));
    let g = Digraph::new(j.graph().n(), arcs).unwrap();
    let m = JoinGraph::from_parts(g, 24, j.steiner().to_vec()).unwrap();
    let rep = verify_join_graph(&m, &p1, &p2).unwrap();
    assert!(!rep.passed());
    assert!(rep.violations.iter().all(|v| !v.expected));
}

#[test]
fn text_round_trip() {
    let mut r = rng(149);
    let (t1, t2) = (random_utree(30, &mut r), random_utree(30, &mut r));
    let j = build_unoriented_trees(&t1, &t2).unwrap();
    let back = JoinGraph::parse(&j.to_text()).unwrap();
    assert_eq!(back, j);
    assert!(JoinGraph::parse("2 1 digraph\n0 1\n").is_err());
    assert!(JoinGraph::parse("3 1 digraph\n0 1\nsteiner 1\nbogus 0 0 0 0 0\n").is_err());
}

#[test]
fn in_tree_wiring_matches_descendant_rule() {
    // Every In-tree Steiner vertex leads only to ancestors of its anchor.
    let mut r = rng(151);
    let t = random_rooted_tree(40, Orientation::In, &mut r);
    let p = random_path(40, &mut r);
    let j = build_tree_path(&t, &p).unwrap();
    let d = dfs_intervals(&RootedTree::from_digraph(&t).unwrap());
    for (k, tag) in j.steiner().iter().enumerate() {
        assert_eq!(tag.kind, SteinerKind::TreeIn);
        for &w in j.graph().out(40 + k) {
            if w < 40 {
                assert_eq!(w, tag.anchor);
            } else {
                assert!(d.contains(j.steiner()[w - 40].anchor, tag.anchor));
            }
        }
    }
}
