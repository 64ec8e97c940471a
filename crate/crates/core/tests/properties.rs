//! Property tests over arbitrary seeds and sizes.

use jr_core::gen::{random_dag, random_path, random_rooted_tree, random_utree};
use jr_core::index::{index_pathcover, index_two_trees};
use jr_core::{
    build_two_trees, build_unoriented_trees, from_ranks, min_path_cover, minimal_restricted_join, transitive_closure,
    verify_join_graph, Orientation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn orient(out: bool) -> Orientation {
    if out {
        Orientation::Out
    } else {
        Orientation::In
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_trees_join_is_exact(seed: u64, n in 1usize..48, o1: bool, o2: bool) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (t1, t2) = (random_rooted_tree(n, orient(o1), &mut r), random_rooted_tree(n, orient(o2), &mut r));
        let j = build_two_trees(&t1, &t2).unwrap();
        prop_assert!(verify_join_graph(&j, &t1, &t2).unwrap().passed());
    }

    #[test]
    fn unoriented_join_is_exact(seed: u64, n in 1usize..48) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (t1, t2) = (random_utree(n, &mut r), random_utree(n, &mut r));
        let j = build_unoriented_trees(&t1, &t2).unwrap();
        prop_assert!(verify_join_graph(&j, &t1, &t2).unwrap().passed());
    }

    #[test]
    fn minimal_join_closure_is_the_and(seed: u64, n in 1usize..40, p in 0.0f64..0.5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (g1, g2) = (random_dag(n, p, &mut r), random_dag(n, p, &mut r));
        let j = minimal_restricted_join(&g1, &g2).unwrap();
        let want = transitive_closure(&g1).and(&transitive_closure(&g2)).unwrap();
        prop_assert_eq!(transitive_closure(&j), want);
    }

    #[test]
    fn cover_is_minimum_and_from_ranks_monotone(seed: u64, n in 1usize..40, p in 0.0f64..0.5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random_dag(n, p, &mut r);
        let pc = min_path_cover(&g).unwrap();
        let reach = transitive_closure(&g);
        // Dilworth bound: a cover can never beat the largest antichain found greedily.
        let mut antichain: Vec<usize> = Vec::new();
        for v in 0..n {
            if antichain.iter().all(|&a| !reach.get(a, v) && !reach.get(v, a)) {
                antichain.push(v);
            }
        }
        prop_assert!(pc.kappa() >= antichain.len());
        let fr = from_ranks(&g, &pc).unwrap();
        for &(u, v) in g.arcs() {
            for i in 0..pc.kappa() {
                prop_assert!(fr.get(u, i) <= fr.get(v, i));
            }
        }
    }

    #[test]
    fn index_queries_are_exact(seed: u64, n in 1usize..40, o: bool) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g1 = random_dag(n, 0.15, &mut r);
        let g2 = random_rooted_tree(n, orient(o), &mut r);
        let idx = index_pathcover(&g1, &g2).unwrap();
        let want = transitive_closure(&g1).and(&transitive_closure(&g2)).unwrap();
        for b in 0..n {
            prop_assert_eq!(idx.query(b).unwrap(), want.column(b));
        }
        let p = random_path(n, &mut r);
        let idx = index_two_trees(&g2, &p).unwrap();
        let want = transitive_closure(&g2).and(&transitive_closure(&p)).unwrap();
        for b in 0..n {
            prop_assert_eq!(idx.query(b).unwrap(), want.column(b));
        }
    }
}
