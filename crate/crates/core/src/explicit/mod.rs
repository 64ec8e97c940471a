//! Explicit join-reachability graphs: digraphs over the original vertices
//! plus Steiner vertices whose reachability between originals is exactly the
//! intersection of the reachability of the inputs.

mod build;
mod dom2;
mod paths;
mod treedom;

#[cfg(test)]
mod tests;

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{parse_sections, transitive_closure, Digraph, PartRole, ReachMatrix};

pub use build::{
    build_pathcover, build_pathcover_with, build_tree_path, build_two_paths, build_two_trees,
    build_unoriented_trees,
};
pub use paths::{bitreversal_pairs, gen_bitreversal, split_unoriented_path, RankSpaceMap};

/// Construction that produced a Steiner vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SteinerKind {
    /// Planar dominance split on the first coordinate.
    Dom2,
    /// Tree dominance, ancestors reaching descendants.
    TreeOut,
    /// Tree dominance, descendants reaching ancestors.
    TreeIn,
}

impl SteinerKind {
    fn as_str(self) -> &'static str {
        match self {
            SteinerKind::Dom2 => "dom2",
            SteinerKind::TreeOut => "tree-out",
            SteinerKind::TreeIn => "tree-in",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "dom2" => SteinerKind::Dom2,
            "tree-out" => SteinerKind::TreeOut,
            "tree-in" => SteinerKind::TreeIn,
            _ => return None,
        })
    }
}

/// Provenance of a Steiner vertex.
///
/// `group` numbers the independent sub-structures of one build (subpath or
/// part pairs), `level`/`sublevel` are recursion depths, `split` is the
/// coordinate of the splitting line and `anchor` the original vertex the
/// Steiner vertex stands for. The anchor always lies on the upper side of
/// the split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SteinerTag {
    pub kind: SteinerKind,
    pub group: u32,
    pub level: u32,
    pub sublevel: u32,
    pub split: i64,
    pub anchor: usize,
}

/// A join-reachability graph. Vertices `0..original_count` are the input
/// vertices; the rest are Steiner vertices, one tag each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinGraph {
    graph: Digraph,
    original_count: usize,
    steiner: Vec<SteinerTag>,
}

impl JoinGraph {
    pub fn from_parts(graph: Digraph, original_count: usize, steiner: Vec<SteinerTag>) -> Result<Self> {
        if original_count + steiner.len() != graph.n() {
            return Err(Error::VertexMismatch { left: graph.n(), right: original_count + steiner.len() });
        }
        Ok(JoinGraph { graph, original_count, steiner })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn original_count(&self) -> usize {
        self.original_count
    }

    pub fn steiner(&self) -> &[SteinerTag] {
        &self.steiner
    }

    pub fn steiner_count(&self) -> usize {
        self.steiner.len()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    /// Vertices plus arcs, Steiner vertices included.
    pub fn size(&self) -> usize {
        self.graph.size()
    }

    /// Reachability among original vertices.
    pub fn closure_on_originals(&self) -> ReachMatrix {
        let n = self.original_count;
        let total = self.graph.n();
        let mut m = ReachMatrix::empty(n);
        let mut seen = vec![usize::MAX; total];
        let mut queue = VecDeque::new();
        for a in 0..n {
            seen[a] = a;
            queue.push_back(a);
            while let Some(v) = queue.pop_front() {
                if v < n {
                    m.set(a, v);
                }
                for &w in self.graph.out(v) {
                    if seen[w] != a {
                        seen[w] = a;
                        queue.push_back(w);
                    }
                }
            }
        }
        m
    }

    /// Graph text followed by a `steiner k` section with one tag per line.
    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_text();
        let _ = writeln!(s, "steiner {}", self.steiner.len());
        for t in &self.steiner {
            let _ = writeln!(
                s,
                "{} {} {} {} {} {}",
                t.kind.as_str(),
                t.group,
                t.level,
                t.sublevel,
                t.split,
                t.anchor
            );
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (graph, rest) = parse_sections(text)?;
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };
        let mut lines = rest.into_iter();
        let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing steiner section"))?;
        let k: usize = header
            .strip_prefix("steiner")
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| perr(hl, "expected `steiner k`"))?;
        let mut tags = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, l) = lines.next().ok_or_else(|| perr(hl, "fewer steiner tags than declared"))?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 6 {
                return Err(perr(ln, "steiner tag needs 6 fields"));
            }
            let num = |i: usize| f[i].parse::<i64>().map_err(|_| perr(ln, "bad number in steiner tag"));
            tags.push(SteinerTag {
                kind: SteinerKind::parse(f[0]).ok_or_else(|| perr(ln, "unknown steiner kind"))?,
                group: num(1)? as u32,
                level: num(2)? as u32,
                sublevel: num(3)? as u32,
                split: num(4)?,
                anchor: num(5)? as usize,
            });
        }
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "unexpected trailing content"));
        }
        let n = graph.n().checked_sub(k).ok_or_else(|| perr(hl, "more steiner vertices than vertices"))?;
        Self::from_parts(graph, n, tags)
    }
}

/// A pair whose join reachability disagrees with the inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub a: usize,
    pub b: usize,
    /// Whether `a` should reach `b`.
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinReport {
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl JoinReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<Violation> {
        self.violations.first().copied()
    }
}

/// Compares reachability among the originals of `j` with the AND of the
/// closures of `g1` and `g2`.
pub fn verify_join_graph(j: &JoinGraph, g1: &Digraph, g2: &Digraph) -> Result<JoinReport> {
    let n = j.original_count();
    for g in [g1, g2] {
        if g.n() != n {
            return Err(Error::VertexMismatch { left: n, right: g.n() });
        }
    }
    let want = transitive_closure(g1).and(&transitive_closure(g2))?;
    let got = j.closure_on_originals();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (w, g) = (want.get(a, b), got.get(a, b));
            if w != g {
                violations.push(Violation { a, b, expected: w });
            }
        }
    }
    Ok(JoinReport { pairs_checked: n * n, violations })
}

/// Accumulates Steiner vertices and arcs on top of `n` originals.
pub(crate) struct JoinBuilder {
    n: usize,
    tags: Vec<SteinerTag>,
    arcs: Vec<(usize, usize)>,
    group: u32,
}

impl JoinBuilder {
    pub(crate) fn new(n: usize) -> Self {
        JoinBuilder { n, tags: Vec::new(), arcs: Vec::new(), group: 0 }
    }

    /// Starts a new independent sub-structure.
    pub(crate) fn next_group(&mut self) {
        self.group += 1;
    }

    pub(crate) fn steiner(&mut self, kind: SteinerKind, level: u32, sublevel: u32, split: i64, anchor: usize) -> usize {
        let id = self.n + self.tags.len();
        self.tags.push(SteinerTag { kind, group: self.group, level, sublevel, split, anchor });
        id
    }

    pub(crate) fn arc(&mut self, u: usize, v: usize) {
        self.arcs.push((u, v));
    }

    pub(crate) fn finish(self) -> JoinGraph {
        let total = self.n + self.tags.len();
        let graph = Digraph::new(total, self.arcs).expect("builder arcs are in range");
        JoinGraph { graph, original_count: self.n, steiner: self.tags }
    }
}

/// Sort key placing sources before targets on equal coordinates, so that
/// rank-space comparisons keep the non-strict order of the originals.
pub(crate) fn role_order(r: PartRole) -> u8 {
    match r {
        PartRole::Source => 0,
        PartRole::Both => 1,
        PartRole::Target => 2,
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}
