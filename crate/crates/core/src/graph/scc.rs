use std::collections::BTreeMap;

use super::Digraph;
use crate::error::{Error, Result};

/// Strong components numbered in a topological order of the condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component id of every vertex.
    pub comp: Vec<usize>,
    /// Vertices of every component, ascending.
    pub members: Vec<Vec<usize>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Tarjan's algorithm, iterative. Components are numbered by reverse
/// completion order, which is a topological order of the condensation.
pub fn strong_components(g: &Digraph) -> Components {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut finished: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = g.out(v).get(*next) {
                *next += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                finished.push(members);
            }
        }
    }
    finished.reverse();
    let mut comp = vec![0; n];
    for (c, ms) in finished.iter().enumerate() {
        for &v in ms {
            comp[v] = c;
        }
    }
    Components { comp, members: finished }
}

/// Kahn's algorithm with a min-id tie break; `None` if `g` has a cycle.
pub fn topological_order(g: &Digraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.inn(v).len()).collect();
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(std::cmp::Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in g.out(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(std::cmp::Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Two acyclic digraphs over subcomponents that preserve the join relation.
#[derive(Debug, Clone)]
pub struct CondensedPair {
    pub g1_hat: Digraph,
    pub g2_hat: Digraph,
    /// Subcomponent of every original vertex.
    pub sub_of: Vec<usize>,
    /// Original vertices of every subcomponent, ascending.
    pub members: Vec<Vec<usize>>,
}

/// Splits strong components into subcomponents (vertices strongly connected
/// in both graphs) and chains them so that both results are acyclic.
pub fn condense_pair(g1: &Digraph, g2: &Digraph) -> Result<CondensedPair> {
    if g1.n() != g2.n() {
        return Err(Error::VertexMismatch { left: g1.n(), right: g2.n() });
    }
    let c1 = strong_components(g1);
    let c2 = strong_components(g2);
    let mut key_to_sub = BTreeMap::new();
    for v in 0..g1.n() {
        key_to_sub.entry((c1.comp[v], c2.comp[v])).or_insert_with(Vec::new).push(v);
    }
    let mut sub_of = vec![0; g1.n()];
    let mut members = Vec::with_capacity(key_to_sub.len());
    let mut keys = Vec::with_capacity(key_to_sub.len());
    for (s, (key, vs)) in key_to_sub.into_iter().enumerate() {
        for &v in &vs {
            sub_of[v] = s;
        }
        members.push(vs);
        keys.push(key);
    }
    let g1_hat = chain_side(g1, &c1, &keys, |k| k.0, |k| k.1)?;
    let g2_hat = chain_side(g2, &c2, &keys, |k| k.1, |k| k.0)?;
    Ok(CondensedPair { g1_hat, g2_hat, sub_of, members })
}

/// Builds `Ĝ` for one side: subcomponents of each component are chained in
/// the other graph's topological order and inter-component arcs run from the
/// last subcomponent of the tail to the first of the head.
fn chain_side(
    g: &Digraph,
    comps: &Components,
    keys: &[(usize, usize)],
    own: impl Fn(&(usize, usize)) -> usize,
    other: impl Fn(&(usize, usize)) -> usize,
) -> Result<Digraph> {
    let mut per_comp: Vec<Vec<usize>> = vec![Vec::new(); comps.count()];
    for (s, k) in keys.iter().enumerate() {
        per_comp[own(k)].push(s);
    }
    for subs in &mut per_comp {
        subs.sort_by_key(|&s| other(&keys[s]));
    }
    let mut arcs = Vec::new();
    for subs in &per_comp {
        arcs.extend(subs.windows(2).map(|w| (w[0], w[1])));
    }
    for &(u, v) in g.arcs() {
        let (cu, cv) = (comps.comp[u], comps.comp[v]);
        if cu != cv {
            let last = *per_comp[cu].last().expect("non-empty component");
            arcs.push((last, per_comp[cv][0]));
        }
    }
    Digraph::new(keys.len(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::transitive_closure;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn join_preserved(g1: &Digraph, g2: &Digraph) {
        let cp = condense_pair(g1, g2).unwrap();
        assert!(topological_order(&cp.g1_hat).is_some());
        assert!(topological_order(&cp.g2_hat).is_some());
        assert!(cp.g1_hat.size() <= g1.size());
        assert!(cp.g2_hat.size() <= g2.size());
        let (m1, m2) = (transitive_closure(g1), transitive_closure(g2));
        let (h1, h2) = (transitive_closure(&cp.g1_hat), transitive_closure(&cp.g2_hat));
        for a in 0..g1.n() {
            for b in 0..g1.n() {
                let (sa, sb) = (cp.sub_of[a], cp.sub_of[b]);
                let before = m1.get(a, b) && m2.get(a, b);
                let after = sa == sb || (h1.get(sa, sb) && h2.get(sa, sb));
                assert_eq!(before, after, "pair ({a},{b})");
                assert_eq!(sa == sb, m1.get(a, b) && m1.get(b, a) && m2.get(a, b) && m2.get(b, a));
            }
        }
    }

    #[test]
    fn tarjan_orders_topologically() {
        let g = Digraph::new(5, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (4, 0)]).unwrap();
        let c = strong_components(&g);
        assert_eq!(c.count(), 3);
        for &(u, v) in g.arcs() {
            assert!(c.comp[u] <= c.comp[v]);
        }
        assert_eq!(c.members[c.comp[2]], vec![2, 3]);
    }

    #[test]
    fn acyclic_inputs_stay_singletons() {
        let g1 = Digraph::new(4, [(0, 1), (1, 2), (0, 3)]).unwrap();
        let g2 = Digraph::new(4, [(3, 2), (0, 2)]).unwrap();
        let cp = condense_pair(&g1, &g2).unwrap();
        assert!(cp.members.iter().all(|m| m.len() == 1));
        assert_eq!(cp.g1_hat.arc_count(), g1.arc_count());
        join_preserved(&g1, &g2);
    }

    #[test]
    fn identical_cycles_collapse() {
        let cyc = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let cp = condense_pair(&cyc, &cyc).unwrap();
        assert_eq!(cp.members, vec![vec![0, 1, 2]]);
        assert_eq!(cp.g1_hat.n(), 1);
        assert_eq!(cp.g2_hat.n(), 1);
    }

    #[test]
    fn four_cycle_splits_by_other_components() {
        let g1 = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let g2 = Digraph::new(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap();
        let cp = condense_pair(&g1, &g2).unwrap();
        assert_eq!(cp.members.len(), 2);
        assert_eq!(cp.g1_hat.arcs(), &[(0, 1)]);
        join_preserved(&g1, &g2);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Digraph::new(2, []).unwrap();
        let b = Digraph::new(3, []).unwrap();
        assert!(matches!(condense_pair(&a, &b), Err(Error::VertexMismatch { .. })));
    }

    #[test]
    fn random_pairs_preserve_join() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(2..=40);
            let mut gen = |p: f64| {
                let arcs: Vec<_> = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|_| rng.gen_bool(p))
                    .collect();
                Digraph::new(n, arcs).unwrap()
            };
            let g1 = gen(0.06);
            let g2 = gen(0.08);
            join_preserved(&g1, &g2);
        }
    }
}
