//! Builders for each supported pair of input classes.

use std::collections::BTreeMap;

use super::dom2::{build_dom2, DomItem};
use super::treedom::{build_tree_dom, build_two_tree_dom, TreeItem, TwoTreeItem};
use super::{JoinBuilder, JoinGraph};
use crate::cover::{dipath_cover, from_ranks, min_path_cover, PathCover};
use crate::error::{Error, Result};
use crate::graph::{dfs_intervals, Digraph, DfsIntervals, Orientation, PartRole, RootedTree, TreeParts};

fn same_n(g1: &Digraph, g2: &Digraph) -> Result<usize> {
    if g1.n() != g2.n() {
        return Err(Error::VertexMismatch { left: g1.n(), right: g2.n() });
    }
    Ok(g1.n())
}

/// Two dipaths: planar dominance on the pair of path ranks.
pub fn build_two_paths(p1: &Digraph, p2: &Digraph) -> Result<JoinGraph> {
    let n = same_n(p1, p2)?;
    let (r1, r2) = (p1.path_ranks()?, p2.path_ranks()?);
    let items: Vec<DomItem> = (0..n)
        .map(|v| DomItem { node: v, role: PartRole::Both, x1: r1[v] as i64, x2: r2[v] as i64 })
        .collect();
    let mut b = JoinBuilder::new(n);
    build_dom2(&mut b, &items);
    Ok(b.finish())
}

/// A rooted tree and a dipath: tree dominance with the path rank as the
/// linear coordinate.
pub fn build_tree_path(t1: &Digraph, p2: &Digraph) -> Result<JoinGraph> {
    let n = same_n(t1, p2)?;
    let tree = RootedTree::from_digraph(t1)?;
    let r2 = p2.path_ranks()?;
    let d = dfs_intervals(&tree);
    let items: Vec<TreeItem> = (0..n)
        .map(|v| TreeItem { node: v, role: PartRole::Both, s: d.s[v], t: d.t[v], y: r2[v] as i64 })
        .collect();
    let mut b = JoinBuilder::new(n);
    build_tree_dom(&mut b, &items, tree.orientation(), 0);
    Ok(b.finish())
}

/// Linear coordinates `(y2, y3)` whose joint dominance is reachability in a
/// rooted tree with DFS intervals `d`.
fn tree_coords(d: &DfsIntervals, orient: Orientation, v: usize) -> (i64, i64) {
    let (s, t) = (d.s[v] as i64, d.t[v] as i64);
    match orient {
        Orientation::Out => (s, -t),
        Orientation::In => (-s, t),
    }
}

/// Two rooted trees of any orientations.
pub fn build_two_trees(t1: &Digraph, t2: &Digraph) -> Result<JoinGraph> {
    let n = same_n(t1, t2)?;
    let (a, c) = (RootedTree::from_digraph(t1)?, RootedTree::from_digraph(t2)?);
    let (d1, d2) = (dfs_intervals(&a), dfs_intervals(&c));
    let items: Vec<TwoTreeItem> = (0..n)
        .map(|v| {
            let (y2, y3) = tree_coords(&d2, c.orientation(), v);
            TwoTreeItem { node: v, role: PartRole::Both, s: d1.s[v], t: d1.t[v], y2, y3 }
        })
        .collect();
    let mut b = JoinBuilder::new(n);
    build_two_tree_dom(&mut b, &items, a.orientation());
    Ok(b.finish())
}

/// Two trees with arbitrarily oriented arcs. Each is decomposed into rooted
/// parts; every pair of parts sharing vertices gets a two-tree structure
/// over the shared vertices, with roles combined.
pub fn build_unoriented_trees(g1: &Digraph, g2: &Digraph) -> Result<JoinGraph> {
    let n = same_n(g1, g2)?;
    let (p1, p2) = (TreeParts::new(g1)?, TreeParts::new(g2)?);
    let iv1: Vec<DfsIntervals> = p1.parts().iter().map(|p| dfs_intervals(&p.tree)).collect();
    let iv2: Vec<DfsIntervals> = p2.parts().iter().map(|p| dfs_intervals(&p.tree)).collect();
    let mut pairs: BTreeMap<(usize, usize), Vec<TwoTreeItem>> = BTreeMap::new();
    for v in 0..n {
        for &(i, l1) in p1.of_vertex(v) {
            for &(j, l2) in p2.of_vertex(v) {
                let r1 = p1.parts()[i].roles[l1].expect("member has a role");
                let r2 = p2.parts()[j].roles[l2].expect("member has a role");
                let Some(role) = r1.meet(r2) else { continue };
                let (y2, y3) = tree_coords(&iv2[j], p2.parts()[j].tree.orientation(), l2);
                pairs.entry((i, j)).or_default().push(TwoTreeItem {
                    node: v,
                    role,
                    s: iv1[i].s[l1],
                    t: iv1[i].t[l1],
                    y2,
                    y3,
                });
            }
        }
    }
    let mut b = JoinBuilder::new(n);
    for ((i, _), items) in pairs {
        build_two_tree_dom(&mut b, &items, p1.parts()[i].tree.orientation());
        b.next_group();
    }
    Ok(b.finish())
}

/// A DAG and a dipath or DAG, via minimum path covers of both.
pub fn build_pathcover(g1: &Digraph, g2: &Digraph) -> Result<JoinGraph> {
    let c1 = min_path_cover(g1)?;
    let c2 = match dipath_cover(g2) {
        Ok(c) => c,
        Err(_) => min_path_cover(g2)?,
    };
    build_pathcover_with(g1, g2, &c1, &c2)
}

/// Path-cover construction with caller-supplied covers. One planar structure
/// per pair of cover paths, over vertices that have a predecessor on both;
/// vertices lying on both paths act as sources at their own ranks.
pub fn build_pathcover_with(g1: &Digraph, g2: &Digraph, c1: &PathCover, c2: &PathCover) -> Result<JoinGraph> {
    let n = same_n(g1, g2)?;
    let (f1, f2) = (from_ranks(g1, c1)?, from_ranks(g2, c2)?);
    let mut b = JoinBuilder::new(n);
    for i in 0..c1.kappa() {
        for j in 0..c2.kappa() {
            let items: Vec<DomItem> = (0..n)
                .filter_map(|v| {
                    let (x1, x2) = (f1.get(v, i)?, f2.get(v, j)?);
                    let on_both = c1.path_of(v).0 == i && c2.path_of(v).0 == j;
                    let role = if on_both { PartRole::Both } else { PartRole::Target };
                    Some(DomItem { node: v, role, x1: x1 as i64, x2: x2 as i64 })
                })
                .collect();
            if items.iter().any(|it| it.role == PartRole::Both) {
                build_dom2(&mut b, &items);
                b.next_group();
            }
        }
    }
    Ok(b.finish())
}
