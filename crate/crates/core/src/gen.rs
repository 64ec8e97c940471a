//! Seeded random instance generators.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::explicit::gen_bitreversal;
use crate::graph::{Digraph, GraphKind, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Path,
    UtreeRandom,
    OutTree,
    InTree,
    DagGnp,
    Bitrev,
    SpSt,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 7] = [
        InstanceKind::Path,
        InstanceKind::UtreeRandom,
        InstanceKind::OutTree,
        InstanceKind::InTree,
        InstanceKind::DagGnp,
        InstanceKind::Bitrev,
        InstanceKind::SpSt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Path => "path",
            InstanceKind::UtreeRandom => "utree-random",
            InstanceKind::OutTree => "out-tree",
            InstanceKind::InTree => "in-tree",
            InstanceKind::DagGnp => "dag-gnp",
            InstanceKind::Bitrev => "bitrev",
            InstanceKind::SpSt => "sp-st",
        }
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown generator kind `{s}`")))
    }
}

/// Everything needed to reproduce an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub seed: u64,
    /// Arc probability for `dag-gnp`; defaults to `min(1, 4/n)`.
    pub p: Option<f64>,
    /// Probability of a parallel (rather than series) step for `sp-st`.
    pub parallel: f64,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, n: usize, seed: u64) -> Self {
        InstanceSpec { kind, n, seed, p: None, parallel: 0.5 }
    }
}

/// One graph, or two for `bitrev`.
pub fn generate(spec: &InstanceSpec) -> Result<Vec<Digraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    Ok(match spec.kind {
        InstanceKind::Path => vec![random_path(n, &mut rng)],
        InstanceKind::UtreeRandom => vec![random_utree(n, &mut rng)],
        InstanceKind::OutTree => vec![random_rooted_tree(n, Orientation::Out, &mut rng)],
        InstanceKind::InTree => vec![random_rooted_tree(n, Orientation::In, &mut rng)],
        InstanceKind::DagGnp => {
            let p = spec.p.unwrap_or((4.0 / n as f64).min(1.0));
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("arc probability {p} outside [0, 1]")));
            }
            vec![random_dag(n, p, &mut rng)]
        }
        InstanceKind::Bitrev => {
            let (a, b) = gen_bitreversal(n)?;
            vec![a, b]
        }
        InstanceKind::SpSt => {
            if n < 2 {
                return Err(Error::InvalidParameter("sp-st needs n >= 2".into()));
            }
            if !(0.0..=1.0).contains(&spec.parallel) {
                return Err(Error::InvalidParameter("parallel probability outside [0, 1]".into()));
            }
            vec![random_sp_st(n, spec.parallel, &mut rng)]
        }
    })
}

fn permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A dipath visiting the vertices in random order.
pub fn random_path(n: usize, rng: &mut impl Rng) -> Digraph {
    Digraph::from_path(&permutation(n, rng)).and_then(|g| g.with_kind(GraphKind::Path)).expect("valid path")
}

/// A random recursive tree on shuffled labels, as `(parent of v)` links.
fn random_parents(n: usize, rng: &mut impl Rng) -> Vec<Option<usize>> {
    let order = permutation(n, rng);
    let mut parent = vec![None; n];
    for i in 1..n {
        parent[order[i]] = Some(order[rng.gen_range(0..i)]);
    }
    parent
}

pub fn random_rooted_tree(n: usize, orientation: Orientation, rng: &mut impl Rng) -> Digraph {
    Digraph::from_parents(&random_parents(n, rng), orientation).expect("valid tree")
}

/// A random tree with every arc oriented by a coin flip.
pub fn random_utree(n: usize, rng: &mut impl Rng) -> Digraph {
    let arcs: Vec<(usize, usize)> = random_parents(n, rng)
        .into_iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| if rng.gen_bool(0.5) { (p, v) } else { (v, p) }))
        .collect();
    Digraph::new(n, arcs).and_then(|g| g.with_kind(GraphKind::UTree)).expect("valid tree")
}

/// A path in random vertex order with every arc oriented by a coin flip.
pub fn random_upath(n: usize, rng: &mut impl Rng) -> Digraph {
    let order = permutation(n, rng);
    let arcs: Vec<(usize, usize)> =
        order.windows(2).map(|w| if rng.gen_bool(0.5) { (w[0], w[1]) } else { (w[1], w[0]) }).collect();
    Digraph::new(n, arcs).and_then(|g| g.with_kind(GraphKind::UTree)).expect("valid path")
}

/// Each pair consistent with a random topological order becomes an arc with
/// probability `p`. Runs in time proportional to `n` plus the arc count.
pub fn random_dag(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    let order = permutation(n, rng);
    let mut arcs = Vec::new();
    if p > 0.0 {
        let log_q = (1.0 - p).ln();
        for i in 0..n {
            let mut j = i;
            loop {
                let skip = if p >= 1.0 { 0 } else { (rng.gen::<f64>().ln() / log_q).floor() as usize };
                j = j.saturating_add(skip + 1);
                if j >= n {
                    break;
                }
                arcs.push((order[i], order[j]));
            }
        }
    }
    Digraph::new(n, arcs).expect("valid dag")
}

/// A DAG of width `width`: in a random order, position `i` points to
/// positions `i + width` and `i + width + 1`. The residue classes modulo
/// `width` form a minimum path cover.
pub fn random_banded_dag(n: usize, width: usize, rng: &mut impl Rng) -> Digraph {
    let width = width.max(1);
    let order = permutation(n, rng);
    let arcs = (0..n).flat_map(|i| [i + width, i + width + 1].into_iter().filter(move |&j| j < n).map(move |j| (i, j)));
    let arcs: Vec<(usize, usize)> = arcs.map(|(i, j)| (order[i], order[j])).collect();
    Digraph::new(n, arcs).expect("valid dag")
}

/// A series-parallel st-graph on exactly `n >= 2` vertices with a clockwise
/// (leftmost-first) out-arc embedding. Starts from a single arc and
/// repeatedly either subdivides an arc or adds a two-arc path beside it.
pub fn random_sp_st(n: usize, parallel: f64, rng: &mut impl Rng) -> Digraph {
    let mut out: Vec<Vec<usize>> = vec![vec![1], vec![]];
    let mut arcs: Vec<(usize, usize)> = vec![(0, 1)];
    while out.len() < n {
        let w = out.len();
        let (u, v) = arcs[rng.gen_range(0..arcs.len())];
        let pos = out[u].iter().position(|&x| x == v).expect("arc listed");
        if rng.gen_bool(parallel) {
            let at = if rng.gen_bool(0.5) { pos } else { pos + 1 };
            out[u].insert(at, w);
            arcs.push((u, w));
        } else {
            out[u][pos] = w;
            let k = arcs.iter().position(|&a| a == (u, v)).expect("arc listed");
            arcs[k] = (u, w);
        }
        out.push(vec![v]);
        arcs.push((w, v));
    }
    // Shuffle labels so the source is not always 0.
    let perm = permutation(n, rng);
    let relabeled: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    let mut emb = vec![Vec::new(); n];
    for (v, list) in out.into_iter().enumerate() {
        emb[perm[v]] = list.into_iter().map(|w| perm[w]).collect();
    }
    Digraph::new(n, relabeled).and_then(|g| g.with_embedding(emb)).expect("valid sp st-graph")
}
