//! Smallest join-reachability graphs without Steiner vertices.

use crate::error::{Error, Result};
use crate::graph::{transitive_closure, Digraph, ReachMatrix};

/// Entrywise AND of two closures; reflexive and transitive whenever both
/// inputs are.
pub type AndClosure = ReachMatrix;

pub fn and_closure(m1: &ReachMatrix, m2: &ReachMatrix) -> Result<AndClosure> {
    m1.and(m2)
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Arc-minimum digraph whose closure is `m`.
///
/// Mutually related vertices are grouped into classes; each class becomes a
/// cycle in id order and classes are linked through their smallest member
/// whenever no third class lies strictly between them.
pub fn transitive_reduction(m: &ReachMatrix) -> Result<Digraph> {
    let n = m.n();
    if !m.is_reflexive() {
        return Err(Error::InvalidParameter("relation is not reflexive".into()));
    }
    if let Some((a, b, c)) = m.transitivity_violation() {
        return Err(Error::NotTransitive(a, b, c));
    }
    let mut rep = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if rep[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = m.row_iter(a).filter(|&b| m.get(b, a)).collect();
        for &b in &members {
            rep[b] = a;
        }
        classes.push(members);
    }
    let w = words(n);
    // strict[a]: vertices strictly above `a` in the relation.
    let strict: Vec<Vec<u64>> = (0..n)
        .map(|a| {
            let mut row = vec![0u64; w];
            if rep[a] == a {
                for b in m.row_iter(a).filter(|&b| !m.get(b, a)) {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
            row
        })
        .collect();
    let mut arcs = Vec::new();
    let mut covered = vec![0u64; w];
    for class in &classes {
        for pair in class.windows(2) {
            arcs.push((pair[0], pair[1]));
        }
        if class.len() > 1 {
            arcs.push((class[class.len() - 1], class[0]));
        }
        let a = class[0];
        covered.iter_mut().for_each(|x| *x = 0);
        for b in m.row_iter(a) {
            if rep[b] == b && b != a && !m.get(b, a) {
                for (c, s) in covered.iter_mut().zip(&strict[b]) {
                    *c |= s;
                }
            }
        }
        for b in m.row_iter(a) {
            if rep[b] == b && strict[a][b / 64] >> (b % 64) & 1 == 1 && covered[b / 64] >> (b % 64) & 1 == 0 {
                arcs.push((a, b));
            }
        }
    }
    Digraph::new(n, arcs)
}

/// Arc-minimum Steiner-free graph with closure `closure(g1) AND closure(g2)`.
pub fn minimal_restricted_join(g1: &Digraph, g2: &Digraph) -> Result<Digraph> {
    if g1.n() != g2.n() {
        return Err(Error::VertexMismatch { left: g1.n(), right: g2.n() });
    }
    transitive_reduction(&and_closure(&transitive_closure(g1), &transitive_closure(g2))?)
}
