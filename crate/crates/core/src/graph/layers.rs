use std::collections::{HashMap, VecDeque};

use super::{Digraph, Orientation, RootedTree};
use crate::error::{Error, Result};

/// Classification of a vertex with respect to one layer graph `G^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerRole {
    /// Member of `L_i`.
    Core,
    /// Member of `L_{i+1}`. For tree inputs `root` is the core vertex the
    /// fringe tree hangs from.
    Fringe { root: Option<usize> },
    Absent,
}

/// One 2-layered graph `G^i`. Local vertex 0 is the root `r0`.
#[derive(Debug, Clone)]
pub struct LayerGraph {
    index: usize,
    graph: Digraph,
    global: Vec<Option<usize>>,
    local: HashMap<usize, usize>,
    roles: Vec<LayerRole>,
}

impl LayerGraph {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Original vertex behind a local id; `None` for a contracted root.
    pub fn global(&self, local: usize) -> Option<usize> {
        self.global[local]
    }

    pub fn local(&self, v: usize) -> Option<usize> {
        self.local.get(&v).copied()
    }

    pub fn role(&self, v: usize) -> LayerRole {
        self.local(v).map_or(LayerRole::Absent, |l| self.roles[l])
    }

    pub fn local_role(&self, local: usize) -> LayerRole {
        self.roles[local]
    }

    /// Original vertices present in this graph.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.global.iter().flatten().copied()
    }

    pub fn has_contracted_root(&self) -> bool {
        self.global[0].is_none()
    }
}

#[derive(Debug, Clone)]
pub struct LayerDecomposition {
    v0: usize,
    layers: Vec<Vec<usize>>,
    iota: Vec<usize>,
    graphs: Vec<LayerGraph>,
}

impl LayerDecomposition {
    pub fn v0(&self) -> usize {
        self.v0
    }

    pub fn mu(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn iota(&self, v: usize) -> usize {
        self.iota[v]
    }

    pub fn graphs(&self) -> &[LayerGraph] {
        &self.graphs
    }

    pub fn role(&self, v: usize, i: usize) -> LayerRole {
        self.graphs.get(i).map_or(LayerRole::Absent, |g| g.role(v))
    }

    /// Sum of `|G^i|` over all layer graphs.
    pub fn total_size(&self) -> usize {
        self.graphs.iter().map(|g| g.graph.size()).sum()
    }

    /// Number of layer graphs containing `v` as a non-root vertex.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.graphs.iter().filter(|g| g.local(v).is_some_and(|l| l != 0)).count()
    }
}

/// Thorup's layering from root `v0`. Vertices left unreached when the
/// alternation stalls (disconnected input) seed a fresh even layer from the
/// lowest unassigned id.
pub fn layer_decompose(g: &Digraph, v0: usize) -> Result<LayerDecomposition> {
    let n = g.n();
    g.check_vertex(v0)?;
    const NONE: usize = usize::MAX;
    let mut iota = vec![NONE; n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut assigned = 0;
    let mut next_seed = 0;
    while assigned < n {
        let i = layers.len();
        let mut layer = Vec::new();
        let mut queue = VecDeque::new();
        let visit = |v: usize, iota: &mut [usize], layer: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            if iota[v] == NONE {
                iota[v] = i;
                layer.push(v);
                queue.push_back(v);
            }
        };
        if i == 0 {
            visit(v0, &mut iota, &mut layer, &mut queue);
        } else {
            for &u in &layers[i - 1] {
                let nbrs = if i.is_multiple_of(2) { g.out(u) } else { g.inn(u) };
                for &w in nbrs {
                    visit(w, &mut iota, &mut layer, &mut queue);
                }
            }
            if layer.is_empty() && i.is_multiple_of(2) {
                while iota[next_seed] != NONE {
                    next_seed += 1;
                }
                visit(next_seed, &mut iota, &mut layer, &mut queue);
            }
        }
        while let Some(u) = queue.pop_front() {
            let nbrs = if i.is_multiple_of(2) { g.out(u) } else { g.inn(u) };
            for &w in nbrs {
                visit(w, &mut iota, &mut layer, &mut queue);
            }
        }
        layer.sort_unstable();
        assigned += layer.len();
        layers.push(layer);
    }
    let tree = g.is_undirected_tree();
    let graphs = (0..layers.len())
        .map(|i| layer_graph(g, &layers, &iota, i, v0, tree))
        .collect::<Result<Vec<_>>>()?;
    Ok(LayerDecomposition { v0, layers, iota, graphs })
}

fn layer_graph(
    g: &Digraph,
    layers: &[Vec<usize>],
    iota: &[usize],
    i: usize,
    v0: usize,
    tree: bool,
) -> Result<LayerGraph> {
    let mut global = vec![(i == 0).then_some(v0)];
    let empty = Vec::new();
    let upper = layers.get(i + 1).unwrap_or(&empty);
    let mut members: Vec<usize> = layers[i].iter().chain(upper).copied().filter(|&v| i > 0 || v != v0).collect();
    members.sort_unstable();
    global.extend(members.iter().map(|&v| Some(v)));
    let local: HashMap<usize, usize> =
        global.iter().enumerate().filter_map(|(l, v)| v.map(|v| (v, l))).collect();
    let mut arcs = Vec::new();
    for (&v, &lv) in &local {
        for &w in g.out(v) {
            if let Some(&lw) = local.get(&w) {
                arcs.push((lv, lw));
            } else if iota[w] < i {
                arcs.push((lv, 0));
            }
        }
        for &u in g.inn(v) {
            if !local.contains_key(&u) && iota[u] < i {
                arcs.push((0, lv));
            }
        }
    }
    let graph = Digraph::new(global.len(), arcs)?;
    let mut roles: Vec<LayerRole> = global
        .iter()
        .map(|v| match v {
            Some(v) if iota[*v] != i => LayerRole::Fringe { root: None },
            _ => LayerRole::Core,
        })
        .collect();
    if tree {
        let (order, parent) = undirected_bfs(&graph, 0);
        for l in order {
            if let (LayerRole::Fringe { .. }, Some(p)) = (roles[l], parent[l]) {
                let root = match roles[p] {
                    LayerRole::Fringe { root } => root,
                    _ => global[p],
                };
                roles[l] = LayerRole::Fringe { root };
            }
        }
    }
    Ok(LayerGraph { index: i, graph, global, local, roles })
}

/// BFS over the underlying undirected graph: visit order and parent links.
fn undirected_bfs(g: &Digraph, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in g.neighbours(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                order.push(w);
            }
        }
    }
    (order, parent)
}

/// Which side of a reachability pair a vertex may take inside a tree part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartRole {
    Source,
    Target,
    Both,
}

impl PartRole {
    pub fn is_source(self) -> bool {
        self != PartRole::Target
    }

    pub fn is_target(self) -> bool {
        self != PartRole::Source
    }

    /// Role a vertex keeps when two parts are combined.
    pub fn meet(self, other: PartRole) -> Option<PartRole> {
        use PartRole::*;
        match (self, other) {
            (Both, r) | (r, Both) => Some(r),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

/// A rooted tree whose ancestry, restricted to source/target pairs allowed by
/// the roles, is exactly a slice of the reachability of the input tree.
#[derive(Debug, Clone)]
pub struct TreePart {
    pub layer: usize,
    pub tree: RootedTree,
    pub global: Vec<Option<usize>>,
    pub roles: Vec<Option<PartRole>>,
}

impl TreePart {
    /// `(local, global, role)` for every participating vertex.
    pub fn members(&self) -> impl Iterator<Item = (usize, usize, PartRole)> + '_ {
        self.global
            .iter()
            .zip(&self.roles)
            .enumerate()
            .filter_map(|(l, (g, r))| Some((l, (*g)?, (*r)?)))
    }
}

/// Decomposition of a tree (rooted or unoriented) into rooted parts such that
/// `a` reaches `b` iff some part has `a` as a source ancestor (out-tree) or
/// descendant (in-tree) of target `b`. Every vertex lies in at most two parts.
#[derive(Debug, Clone)]
pub struct TreeParts {
    parts: Vec<TreePart>,
    membership: Vec<Vec<(usize, usize)>>,
}

impl TreeParts {
    pub fn new(g: &Digraph) -> Result<Self> {
        let n = g.n();
        if let Ok(tree) = RootedTree::from_digraph(g) {
            let part = TreePart {
                layer: 0,
                tree,
                global: (0..n).map(Some).collect(),
                roles: vec![Some(PartRole::Both); n],
            };
            return Ok(Self::assemble(n, vec![part]));
        }
        if !g.is_undirected_tree() {
            return Err(crate::error::class_err("tree", "underlying graph is not a tree"));
        }
        let dec = layer_decompose(g, 0)?;
        let mut parts = Vec::new();
        for lg in dec.graphs() {
            if lg.vertices().next().is_none() {
                continue;
            }
            parts.push(expand_fringes(lg)?);
        }
        Ok(Self::assemble(n, parts))
    }

    fn assemble(n: usize, parts: Vec<TreePart>) -> Self {
        let mut membership = vec![Vec::new(); n];
        for (p, part) in parts.iter().enumerate() {
            for (l, v, _) in part.members() {
                membership[v].push((p, l));
            }
        }
        TreeParts { parts, membership }
    }

    pub fn parts(&self) -> &[TreePart] {
        &self.parts
    }

    /// `(part, local id)` pairs for vertex `v`.
    pub fn of_vertex(&self, v: usize) -> &[(usize, usize)] {
        &self.membership[v]
    }
}

/// Turns a 2-layered tree into a rooted tree: the fringe vertices hanging
/// from core vertex `c` become a chain (by increasing id) between `c` and its
/// parent, so each fringe vertex sees exactly the core subtree it reaches or
/// is reached from.
fn expand_fringes(lg: &LayerGraph) -> Result<TreePart> {
    let k = lg.graph().n();
    let (_, bfs_parent) = undirected_bfs(lg.graph(), 0);
    let even = lg.index().is_multiple_of(2);
    let mut chains: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut roles = vec![Some(PartRole::Both); k];
    let mut parent = bfs_parent.clone();
    if lg.has_contracted_root() {
        roles[0] = None;
    }
    for l in 1..k {
        if let LayerRole::Fringe { root } = lg.local_role(l) {
            match root.and_then(|r| lg.local(r)) {
                Some(c) => {
                    chains[c].push(l);
                    roles[l] = Some(if even { PartRole::Source } else { PartRole::Target });
                }
                None => roles[l] = None,
            }
        }
    }
    for c in 0..k {
        let chain = &chains[c];
        if let (Some(&first), Some(&last)) = (chain.first(), chain.last()) {
            parent[first] = bfs_parent[c];
            for w in chain.windows(2) {
                parent[w[1]] = Some(w[0]);
            }
            parent[c] = Some(last);
        }
    }
    let orientation = if even { Orientation::Out } else { Orientation::In };
    let tree = RootedTree::from_parents(parent, orientation)
        .map_err(|e| Error::InvalidParameter(format!("layer {} expansion: {e}", lg.index())))?;
    let global = (0..k).map(|l| lg.global(l)).collect();
    Ok(TreePart { layer: lg.index(), tree, global, roles })
}
