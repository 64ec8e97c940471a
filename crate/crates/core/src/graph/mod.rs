//! Directed graphs over dense vertex ids, their text format, and the
//! reachability substrate shared by every construction.

mod layers;
mod reach;
mod scc;
mod tree;

pub use layers::{layer_decompose, LayerDecomposition, LayerGraph, LayerRole, PartRole, TreePart, TreeParts};
pub use reach::{transitive_closure, ReachMatrix};
pub use scc::{condense_pair, strong_components, topological_order, CondensedPair, Components};
pub use tree::{dfs_intervals, nca_build, DfsIntervals, NcaIndex, Orientation, RootedTree};

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{class_err, Error, Result};

/// Class tag carried by a [`Digraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Digraph,
    /// A directed path: every arc points from a vertex to its successor.
    Path,
    OutTree,
    InTree,
    /// A tree whose arcs may point either way.
    UTree,
    PlanarSt,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Digraph => "digraph",
            GraphKind::Path => "path",
            GraphKind::OutTree => "out-tree",
            GraphKind::InTree => "in-tree",
            GraphKind::UTree => "utree",
            GraphKind::PlanarSt => "planar-st",
        }
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "digraph" => GraphKind::Digraph,
            "path" => GraphKind::Path,
            "out-tree" => GraphKind::OutTree,
            "in-tree" => GraphKind::InTree,
            "utree" => GraphKind::UTree,
            "planar-st" => GraphKind::PlanarSt,
            other => return Err(format!("unknown graph kind `{other}`")),
        })
    }
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A simple directed graph over vertices `0..n`.
///
/// Arcs are kept sorted and deduplicated; self-loops are dropped on
/// construction. Planar st-graphs additionally carry a clockwise out-arc
/// order per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    kind: GraphKind,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    embedding: Option<Vec<Vec<usize>>>,
}

impl Digraph {
    /// Builds an untagged digraph, normalizing away self-loops and duplicate arcs.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                list.push((u, v));
            }
        }
        list.sort_unstable();
        list.dedup();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for l in &mut in_adj {
            l.sort_unstable();
        }
        Ok(Digraph { n, arcs: list, kind: GraphKind::Digraph, out_adj, in_adj, embedding: None })
    }

    /// Re-tags the graph, validating the class invariants of `kind`.
    pub fn with_kind(mut self, kind: GraphKind) -> Result<Self> {
        self.kind = kind;
        self.validate_kind()?;
        Ok(self)
    }

    /// A dipath visiting `order` front to back.
    pub fn from_path(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let g = Digraph::new(n, order.windows(2).map(|w| (w[0], w[1])))?;
        g.with_kind(GraphKind::Path)
    }

    /// A rooted tree from a parent array. Out-trees get arcs parent to child,
    /// in-trees child to parent.
    pub fn from_parents(parents: &[Option<usize>], orientation: Orientation) -> Result<Self> {
        let arcs = parents.iter().enumerate().filter_map(|(v, p)| {
            p.map(|p| match orientation {
                Orientation::Out => (p, v),
                Orientation::In => (v, p),
            })
        });
        let g = Digraph::new(parents.len(), arcs)?;
        g.with_kind(match orientation {
            Orientation::Out => GraphKind::OutTree,
            Orientation::In => GraphKind::InTree,
        })
    }

    /// Attaches a clockwise out-arc order and tags the graph as a planar st-graph.
    pub fn with_embedding(mut self, order: Vec<Vec<usize>>) -> Result<Self> {
        if order.len() != self.n {
            return Err(class_err("planar-st", "embedding must list every vertex"));
        }
        self.embedding = Some(order);
        self.with_kind(GraphKind::PlanarSt)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// `|V| + |A|`.
    pub fn size(&self) -> usize {
        self.n + self.arcs.len()
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn inn(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn embedding(&self) -> Option<&[Vec<usize>]> {
        self.embedding.as_deref()
    }

    pub fn reverse(&self) -> Digraph {
        let mut g = Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (v, u))).expect("same vertex set");
        g.kind = match self.kind {
            GraphKind::OutTree => GraphKind::InTree,
            GraphKind::InTree => GraphKind::OutTree,
            GraphKind::PlanarSt => GraphKind::Digraph,
            k => k,
        };
        g
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Vertices of a dipath in path order.
    pub fn dipath_order(&self) -> Result<Vec<usize>> {
        const WHAT: &str = "dipath";
        if self.n == 0 {
            return Ok(Vec::new());
        }
        if self.arcs.len() != self.n - 1 {
            return Err(class_err(WHAT, format!("{} arcs for {} vertices", self.arcs.len(), self.n)));
        }
        let mut start = None;
        for v in 0..self.n {
            if self.out_adj[v].len() > 1 || self.in_adj[v].len() > 1 {
                return Err(class_err(WHAT, format!("vertex {v} has degree above one")));
            }
            if self.in_adj[v].is_empty() {
                if start.is_some() {
                    return Err(class_err(WHAT, "more than one source"));
                }
                start = Some(v);
            }
        }
        let mut order = Vec::with_capacity(self.n);
        let mut cur = start.ok_or_else(|| class_err(WHAT, "no source"))?;
        loop {
            order.push(cur);
            match self.out_adj[cur].first() {
                Some(&next) => cur = next,
                None => break,
            }
        }
        if order.len() != self.n {
            return Err(class_err(WHAT, "not connected"));
        }
        Ok(order)
    }

    /// Rank of every vertex along a dipath (`r_P`).
    pub fn path_ranks(&self) -> Result<Vec<usize>> {
        let order = self.dipath_order()?;
        let mut rank = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Ok(rank)
    }

    /// Whether the underlying undirected graph is a tree.
    pub fn is_undirected_tree(&self) -> bool {
        if self.n == 0 || self.arcs.len() != self.n - 1 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Undirected neighbours of `v`, ascending.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.out_adj[v].iter().chain(&self.in_adj[v]).copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn validate_kind(&self) -> Result<()> {
        match self.kind {
            GraphKind::Digraph => Ok(()),
            GraphKind::Path => self.dipath_order().map(|_| ()),
            GraphKind::OutTree | GraphKind::InTree => {
                RootedTree::from_digraph(self).map(|_| ())
            }
            GraphKind::UTree => {
                if self.is_undirected_tree() {
                    Ok(())
                } else {
                    Err(class_err("unoriented tree", "underlying graph is not a tree"))
                }
            }
            GraphKind::PlanarSt => self.validate_st(),
        }
    }

    fn validate_st(&self) -> Result<()> {
        const WHAT: &str = "planar st-graph";
        if topological_order(self).is_none() {
            return Err(class_err(WHAT, "graph has a cycle"));
        }
        let sources = (0..self.n).filter(|&v| self.in_adj[v].is_empty()).count();
        let sinks = (0..self.n).filter(|&v| self.out_adj[v].is_empty()).count();
        if self.n > 0 && (sources != 1 || sinks != 1) {
            return Err(class_err(WHAT, format!("{sources} sources and {sinks} sinks")));
        }
        let emb = self.embedding.as_ref().ok_or_else(|| class_err(WHAT, "missing embedding"))?;
        for (v, order) in emb.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != self.out_adj[v] {
                return Err(class_err(WHAT, format!("embedding of vertex {v} does not match its out-arcs")));
            }
        }
        Ok(())
    }

    /// Serializes as `n m kind`, one arc per line, then embedding lines for planar st-graphs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.n, self.arcs.len(), self.kind);
        for &(u, v) in &self.arcs {
            let _ = writeln!(s, "{u} {v}");
        }
        if let Some(emb) = &self.embedding {
            for (v, order) in emb.iter().enumerate() {
                if order.is_empty() {
                    continue;
                }
                let _ = write!(s, "{v}:");
                for w in order {
                    let _ = write!(s, " {w}");
                }
                s.push('\n');
            }
        }
        s
    }

    /// Parses the text format produced by [`Digraph::to_text`].
    pub fn parse(text: &str) -> Result<Digraph> {
        let (g, rest) = parse_sections(text)?;
        if let Some((line, _)) = rest.first() {
            return Err(Error::Parse { line: *line, msg: "unexpected trailing content".into() });
        }
        Ok(g)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

/// Parses the header, arcs and optional embedding, returning the remaining
/// non-empty lines (with 1-based line numbers) for callers that append sections.
pub(crate) fn parse_sections(text: &str) -> Result<(Digraph, Vec<(usize, &str)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    let n = parse_num(toks.next(), hl, "vertex count")?;
    let m = parse_num(toks.next(), hl, "arc count")?;
    let kind: GraphKind = toks
        .next()
        .unwrap_or("digraph")
        .parse()
        .map_err(|e: String| perr(hl, e))?;
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| perr(hl, "fewer arcs than declared"))?;
        let mut t = l.split_whitespace();
        let u = parse_num(t.next(), ln, "arc tail")?;
        let v = parse_num(t.next(), ln, "arc head")?;
        if u >= n || v >= n {
            return Err(perr(ln, format!("arc ({u},{v}) out of range")));
        }
        arcs.push((u, v));
    }
    let g = Digraph::new(n, arcs)?;
    let mut rest: Vec<(usize, &str)> = lines.collect();
    let g = if kind == GraphKind::PlanarSt {
        let mut emb = vec![Vec::new(); n];
        let mut consumed = 0;
        for &(ln, l) in &rest {
            let Some((head, tail)) = l.split_once(':') else { break };
            let v = parse_num(Some(head.trim()), ln, "embedding vertex")?;
            if v >= n {
                return Err(perr(ln, "embedding vertex out of range"));
            }
            emb[v] = tail
                .split_whitespace()
                .map(|t| parse_num(Some(t), ln, "embedding entry"))
                .collect::<Result<_>>()?;
            consumed += 1;
        }
        rest.drain(..consumed);
        g.with_embedding(emb)
    } else {
        g.with_kind(kind)
    }
    .map_err(|e| perr(hl, e.to_string()))?;
    Ok((g, rest))
}
