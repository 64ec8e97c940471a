//! Per-class index builders.

use std::collections::{BTreeMap, HashMap};

use super::{kameda_labels, IndexVariant, JRIndex, Probe, Structure};
use crate::cover::{from_ranks, min_path_cover};
use crate::error::{Error, Result};
use crate::explicit::split_unoriented_path;
use crate::geom::{CartesianTree, Dominance3D, EnclosureIndex, HSegment, Point2, Point3, RangeTree2D, Rect, SegRayIndex};
use crate::graph::{dfs_intervals, DfsIntervals, Digraph, Orientation, PartRole, RootedTree, TreeParts};
use crate::hpd::HpdTwoTrees;

fn same_n(g1: &Digraph, g2: &Digraph) -> Result<usize> {
    if g1.n() != g2.n() {
        return Err(Error::VertexMismatch { left: g1.n(), right: g2.n() });
    }
    Ok(g1.n())
}

/// `(subpath, rank)` memberships of every vertex of a path-shaped graph.
fn subpath_ranks(p: &Digraph) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut m = vec![Vec::new(); p.n()];
    for (i, seg) in split_unoriented_path(p)?.iter().enumerate() {
        for (r, &v) in seg.iter().enumerate() {
            m[v].push((i, r));
        }
    }
    Ok(m)
}

fn dom_nonempty(ct: &CartesianTree, x: i64, y: i64) -> bool {
    ct.position_upto(x).is_some_and(|hi| ct.column(ct.range_min(0, hi)).x2 <= y)
}

fn grounded_nonempty(ct: &CartesianTree, lo: i64, hi: i64, y: i64) -> bool {
    ct.positions_within(lo, hi).is_some_and(|(a, b)| ct.column(ct.range_min(a, b)).x2 <= y)
}

/// A target `b` with its dominance corner `(x, y)`.
type DomQuery = (usize, i64, i64);

/// Dominance structure over `sources`; each query is planned only if it
/// reports something.
fn add_dom(
    idx: &mut JRIndex,
    origin: (usize, usize),
    sources: Vec<Point2>,
    queries: impl IntoIterator<Item = DomQuery>,
) -> Result<()> {
    if sources.is_empty() {
        return Ok(());
    }
    let ct = CartesianTree::multi_column(sources)?;
    let planned: Vec<(usize, Probe)> = queries
        .into_iter()
        .filter(|&(_, x, y)| dom_nonempty(&ct, x, y))
        .map(|(b, x, y)| (b, Probe::Dom { x, y }))
        .collect();
    if !planned.is_empty() {
        let sid = idx.add(Structure::Dom(ct), origin);
        for (b, p) in planned {
            idx.plan(b, sid, p);
        }
    }
    Ok(())
}

struct LinearMember {
    local: usize,
    global: usize,
    role: PartRole,
    /// `a` reaches `b` along the linear order iff `y(a) <= y(b)`.
    y: i64,
}

/// Rooted tree combined with a linear order.
fn add_tree_linear(
    idx: &mut JRIndex,
    origin: (usize, usize),
    orient: Orientation,
    iv: &DfsIntervals,
    members: &[LinearMember],
) -> Result<()> {
    let sources = members.iter().filter(|m| m.role.is_source());
    let targets = members.iter().filter(|m| m.role.is_target());
    let (s, t) = (|m: &LinearMember| iv.s[m.local] as i64, |m: &LinearMember| iv.t[m.local] as i64);
    let (structure, planned): (Structure, Vec<(usize, Probe)>) = match orient {
        // Proper ancestors: segments over the subtree span at height -y.
        Orientation::Out => {
            let segs: Vec<HSegment> = sources.map(|m| HSegment::new(s(m), t(m), -m.y, m.global)).collect();
            if segs.is_empty() {
                return Ok(());
            }
            let queries: Vec<(usize, i64, i64)> = targets.map(|m| (m.global, s(m), -m.y)).collect();
            let regs: Vec<(i64, i64)> = queries.iter().map(|&(_, x, y)| (x, y)).collect();
            let ray = SegRayIndex::new(segs, &regs)?;
            let mut planned = Vec::new();
            for (b, x, y) in queries {
                if ray.first_hit(x, y)?.is_some() {
                    planned.push((b, Probe::Ray { x, y, y_hi: i64::MAX }));
                }
            }
            (Structure::Ray(ray), planned)
        }
        // Descendants: entry times inside the subtree span, grounded on y.
        Orientation::In => {
            let pts: Vec<Point2> = sources.map(|m| Point2::new(s(m), m.y, m.global)).collect();
            if pts.is_empty() {
                return Ok(());
            }
            let ct = CartesianTree::new(pts)?;
            let planned = targets
                .filter(|m| grounded_nonempty(&ct, s(m), t(m), m.y))
                .map(|m| (m.global, Probe::Grounded { lo: s(m), hi: t(m), y: m.y }))
                .collect();
            (Structure::Grounded(ct), planned)
        }
    };
    if !planned.is_empty() {
        let sid = idx.add(structure, origin);
        for (b, p) in planned {
            idx.plan(b, sid, p);
        }
    }
    Ok(())
}

struct PairMember {
    l1: usize,
    l2: usize,
    global: usize,
    role: PartRole,
}

type Coords<'a> = &'a dyn Fn(&PairMember) -> (i64, i64);

/// Two rooted trees over shared members.
fn add_tree_tree(
    idx: &mut JRIndex,
    origin: (usize, usize),
    (o1, iv1): (Orientation, &DfsIntervals),
    (o2, iv2): (Orientation, &DfsIntervals),
    members: &[PairMember],
) -> Result<()> {
    let sources: Vec<&PairMember> = members.iter().filter(|m| m.role.is_source()).collect();
    let targets: Vec<&PairMember> = members.iter().filter(|m| m.role.is_target()).collect();
    if sources.is_empty() || targets.is_empty() {
        return Ok(());
    }
    let i1 = |m: &PairMember| (iv1.s[m.l1] as i64, iv1.t[m.l1] as i64);
    let i2 = |m: &PairMember| (iv2.s[m.l2] as i64, iv2.t[m.l2] as i64);
    let mut planned: Vec<(usize, Probe)> = Vec::new();
    let structure = match (o1, o2) {
        // Proper ancestor in both: the rectangle of spans encloses the corner.
        (Orientation::Out, Orientation::Out) => {
            let rects = sources.iter().map(|m| Rect::new(i1(m), i2(m), m.global)).collect();
            for m in &targets {
                planned.push((m.global, Probe::Corner { q1: i1(m).0, q2: i2(m).0 }));
            }
            Structure::Enclosure(EnclosureIndex::new(rects)?)
        }
        // Proper ancestor in the out-tree, descendant in the in-tree.
        (Orientation::Out, Orientation::In) | (Orientation::In, Orientation::Out) => {
            let (anc, desc): (Coords, Coords) =
                if o1 == Orientation::Out { (&i1, &i2) } else { (&i2, &i1) };
            let segs = sources.iter().map(|m| HSegment::new(anc(m).0, anc(m).1, desc(m).0, m.global)).collect();
            let queries: Vec<(usize, i64, i64, i64)> =
                targets.iter().map(|m| (m.global, anc(m).0, desc(m).0, desc(m).1)).collect();
            let regs: Vec<(i64, i64)> = queries.iter().map(|q| (q.1, q.2)).collect();
            let ray = SegRayIndex::new(segs, &regs)?;
            for (b, x, y, y_hi) in queries {
                if ray.first_hit(x, y)?.is_some_and(|s| s.x2 <= y_hi) {
                    planned.push((b, Probe::Ray { x, y, y_hi }));
                }
            }
            Structure::Ray(ray)
        }
        // Descendant in both: entry times inside both spans.
        (Orientation::In, Orientation::In) => {
            let pts = sources.iter().map(|m| Point2::new(i1(m).0, i2(m).0, m.global)).collect();
            for m in &targets {
                planned.push((m.global, Probe::Rect { x1: i1(m), x2: i2(m) }));
            }
            Structure::Range(RangeTree2D::new(pts))
        }
    };
    if !planned.is_empty() {
        let sid = idx.add(structure, origin);
        for (b, p) in planned {
            idx.plan(b, sid, p);
        }
    }
    Ok(())
}

/// Two paths; either may have arbitrarily oriented arcs, in which case one
/// structure is built per pair of maximal dipaths.
pub fn index_two_paths(p1: &Digraph, p2: &Digraph) -> Result<JRIndex> {
    let n = same_n(p1, p2)?;
    let (m1, m2) = (subpath_ranks(p1)?, subpath_ranks(p2)?);
    let mut pairs: BTreeMap<(usize, usize), Vec<Point2>> = BTreeMap::new();
    for v in 0..n {
        for &(i, r1) in &m1[v] {
            for &(j, r2) in &m2[v] {
                pairs.entry((i, j)).or_default().push(Point2::new(r1 as i64, r2 as i64, v));
            }
        }
    }
    let mut idx = JRIndex::new(IndexVariant::TwoPaths, n);
    for (origin, pts) in pairs {
        let queries: Vec<_> = pts.iter().map(|p| (p.payload, p.x1, p.x2)).collect();
        add_dom(&mut idx, origin, pts, queries)?;
    }
    Ok(idx)
}

/// A tree (rooted or with arbitrary arc directions) and a path (likewise).
/// One structure per pair of tree part and maximal dipath.
pub fn index_tree_path(t1: &Digraph, p2: &Digraph) -> Result<JRIndex> {
    let n = same_n(t1, p2)?;
    let parts = TreeParts::new(t1)?;
    let m2 = subpath_ranks(p2)?;
    let mut pairs: BTreeMap<(usize, usize), Vec<LinearMember>> = BTreeMap::new();
    for v in 0..n {
        for &(pi, local) in parts.of_vertex(v) {
            let role = parts.parts()[pi].roles[local].expect("member has a role");
            for &(j, r) in &m2[v] {
                pairs.entry((pi, j)).or_default().push(LinearMember { local, global: v, role, y: r as i64 });
            }
        }
    }
    let ivs: Vec<DfsIntervals> = parts.parts().iter().map(|p| dfs_intervals(&p.tree)).collect();
    let mut idx = JRIndex::new(IndexVariant::TreePath, n);
    for ((pi, j), members) in pairs {
        add_tree_linear(&mut idx, (pi, j), parts.parts()[pi].tree.orientation(), &ivs[pi], &members)?;
    }
    Ok(idx)
}

/// Two trees, each rooted or with arbitrary arc directions.
pub fn index_two_trees(t1: &Digraph, t2: &Digraph) -> Result<JRIndex> {
    let n = same_n(t1, t2)?;
    let (a, b) = (TreeParts::new(t1)?, TreeParts::new(t2)?);
    let mut pairs: BTreeMap<(usize, usize), Vec<PairMember>> = BTreeMap::new();
    for v in 0..n {
        for &(p, l1) in a.of_vertex(v) {
            for &(q, l2) in b.of_vertex(v) {
                let r1 = a.parts()[p].roles[l1].expect("member has a role");
                let r2 = b.parts()[q].roles[l2].expect("member has a role");
                if let Some(role) = r1.meet(r2) {
                    pairs.entry((p, q)).or_default().push(PairMember { l1, l2, global: v, role });
                }
            }
        }
    }
    let iva: Vec<DfsIntervals> = a.parts().iter().map(|p| dfs_intervals(&p.tree)).collect();
    let ivb: Vec<DfsIntervals> = b.parts().iter().map(|p| dfs_intervals(&p.tree)).collect();
    let mut idx = JRIndex::new(IndexVariant::TwoTrees, n);
    for ((p, q), members) in pairs {
        add_tree_tree(
            &mut idx,
            (p, q),
            (a.parts()[p].tree.orientation(), &iva[p]),
            (b.parts()[q].tree.orientation(), &ivb[q]),
            &members,
        )?;
    }
    Ok(idx)
}

/// An out-tree and a rooted tree through heavy paths of the out-tree.
pub fn index_hpd_two_trees(t1: &Digraph, t2: &Digraph) -> Result<JRIndex> {
    let n = same_n(t1, t2)?;
    let h = HpdTwoTrees::new(&RootedTree::from_digraph(t1)?, &RootedTree::from_digraph(t2)?)?;
    let mut idx = JRIndex::new(IndexVariant::HpdTwoTrees, n);
    let sid = idx.add(Structure::Hpd(h), (0, 0));
    for b in 0..n {
        idx.plan(b, sid, Probe::Hpd(b));
    }
    Ok(idx)
}

/// A DAG with a dipath, a rooted tree or another DAG, through a minimum path
/// cover of the first graph (and of the second, if it is a general DAG).
/// Each vertex keeps probes only for the cover paths that contribute to its
/// answer.
pub fn index_pathcover(g1: &Digraph, g2: &Digraph) -> Result<JRIndex> {
    let n = same_n(g1, g2)?;
    let c1 = min_path_cover(g1)?;
    let f1 = from_ranks(g1, &c1)?;
    let mut idx = JRIndex::new(IndexVariant::Pathcover, n);
    if let Ok(rank2) = g2.path_ranks() {
        for (i, path) in c1.paths().iter().enumerate() {
            let pts = path.iter().enumerate().map(|(r, &a)| Point2::new(r as i64, rank2[a] as i64, a)).collect();
            let queries = (0..n).filter_map(|b| Some((b, f1.get(b, i)? as i64, rank2[b] as i64)));
            add_dom(&mut idx, (i, 0), pts, queries)?;
        }
    } else if let Ok(tree) = RootedTree::from_digraph(g2) {
        let iv = dfs_intervals(&tree);
        for (i, path) in c1.paths().iter().enumerate() {
            // The global id doubles as the local one: the tree spans all vertices.
            let mut members: Vec<LinearMember> = path
                .iter()
                .enumerate()
                .map(|(r, &a)| LinearMember { local: a, global: a, role: PartRole::Source, y: r as i64 })
                .collect();
            members.extend((0..n).filter_map(|b| {
                Some(LinearMember { local: b, global: b, role: PartRole::Target, y: f1.get(b, i)? as i64 })
            }));
            add_tree_linear(&mut idx, (i, 0), tree.orientation(), &iv, &members)?;
        }
    } else {
        let c2 = min_path_cover(g2)?;
        let f2 = from_ranks(g2, &c2)?;
        let mut pairs: HashMap<(usize, usize), Vec<Point2>> = HashMap::new();
        for v in 0..n {
            let ((i, r1), (j, r2)) = (c1.path_of(v), c2.path_of(v));
            pairs.entry((i, j)).or_default().push(Point2::new(r1 as i64, r2 as i64, v));
        }
        let mut queries: HashMap<(usize, usize), Vec<DomQuery>> = HashMap::new();
        for b in 0..n {
            for (i, x) in f1.nonempty(b) {
                for (j, y) in f2.nonempty(b) {
                    if pairs.contains_key(&(i, j)) {
                        queries.entry((i, j)).or_default().push((b, x as i64, y as i64));
                    }
                }
            }
        }
        let mut keys: Vec<(usize, usize)> = pairs.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let pts = pairs.remove(&key).expect("key present");
            add_dom(&mut idx, key, pts, queries.remove(&key).unwrap_or_default())?;
        }
    }
    Ok(idx)
}

/// An embedded planar st-graph and a dipath via three-dimensional dominance
/// on the two st-labels and the path rank.
pub fn index_planar_st(g1: &Digraph, p2: &Digraph) -> Result<JRIndex> {
    let n = same_n(g1, p2)?;
    let labels = kameda_labels(g1)?;
    let r2 = p2.path_ranks()?;
    let coord = |v: usize| [labels.l1[v] as i64, labels.l2[v] as i64, r2[v] as i64];
    let d = Dominance3D::new((0..n).map(|v| Point3 { x: coord(v), payload: v }).collect())?;
    let mut idx = JRIndex::new(IndexVariant::PlanarSt, n);
    let sid = idx.add(Structure::Dom3(d), (0, 0));
    for b in 0..n {
        idx.plan(b, sid, Probe::Dom3(coord(b)));
    }
    idx.labels = Some(labels);
    Ok(idx)
}
