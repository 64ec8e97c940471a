//! Two-label dominance characterization of reachability in embedded planar
//! st-graphs.

use crate::error::{Error, Result};
use crate::graph::{topological_order, transitive_closure, Digraph};

/// Graphs up to this size are checked against the full closure at build
/// time; larger ones are checked arc by arc.
pub const KAMEDA_EXHAUSTIVE_LIMIT: usize = 2048;

/// `a` reaches `b` iff `l1(a) <= l1(b)` and `l2(a) <= l2(b)`. Labels are
/// permutations of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KamedaLabels {
    pub l1: Vec<usize>,
    pub l2: Vec<usize>,
}

impl KamedaLabels {
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.l1[a] <= self.l1[b] && self.l2[a] <= self.l2[b]
    }
}

/// Labels from two depth-first searches out of the source: the first takes
/// out-arcs in embedding (clockwise) order, the second in reverse. A vertex's
/// label is `n + 1` minus its finishing position.
pub fn kameda_labels(g: &Digraph) -> Result<KamedaLabels> {
    let n = g.n();
    let emb = g.embedding().ok_or_else(|| Error::InvalidEmbedding("graph has no embedding".into()))?;
    if topological_order(g).is_none() {
        return Err(Error::InvalidEmbedding("graph has a cycle".into()));
    }
    let sources: Vec<usize> = (0..n).filter(|&v| g.inn(v).is_empty()).collect();
    let &[s] = sources.as_slice() else {
        return Err(Error::InvalidEmbedding(format!("{} sources", sources.len())));
    };
    let l1 = finish_labels(emb, s, false);
    let l2 = finish_labels(emb, s, true);
    if l1.contains(&0) {
        return Err(Error::InvalidEmbedding("vertex unreachable from the source".into()));
    }
    let labels = KamedaLabels { l1, l2 };
    validate(g, &labels)?;
    Ok(labels)
}

fn finish_labels(emb: &[Vec<usize>], s: usize, reverse: bool) -> Vec<usize> {
    let n = emb.len();
    let mut label = vec![0; n];
    let mut seen = vec![false; n];
    let mut finished = 0;
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    seen[s] = true;
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let outs = &emb[v];
        if i == outs.len() {
            stack.pop();
            finished += 1;
            label[v] = n + 1 - finished;
            continue;
        }
        top.1 += 1;
        let w = if reverse { outs[outs.len() - 1 - i] } else { outs[i] };
        if !seen[w] {
            seen[w] = true;
            stack.push((w, 0));
        }
    }
    label
}

fn validate(g: &Digraph, labels: &KamedaLabels) -> Result<()> {
    let n = g.n();
    let bad = |a: usize, b: usize| {
        Error::InvalidEmbedding(format!("labels disagree with reachability on ({a}, {b})"))
    };
    if n > KAMEDA_EXHAUSTIVE_LIMIT {
        for &(a, b) in g.arcs() {
            if !labels.dominates(a, b) {
                return Err(bad(a, b));
            }
        }
        return Ok(());
    }
    let reach = transitive_closure(g);
    for a in 0..n {
        for b in 0..n {
            if reach.get(a, b) != labels.dominates(a, b) {
                return Err(bad(a, b));
            }
        }
    }
    Ok(())
}
