//! Heavy-path decomposition and the label-reporting structures built on it.

use crate::error::{class_err, Result};
use crate::geom::{CartesianTree, HSegment, Point2, SegRayIndex};
use crate::graph::{dfs_intervals, DfsIntervals, Orientation, RootedTree};

/// Heavy paths of a rooted tree. A child `c` of `a` is heavy when
/// `2|T(c)| >= |T(a)|`.
#[derive(Debug, Clone)]
pub struct HeavyPathDecomp {
    heavy: Vec<Option<usize>>,
    paths: Vec<Vec<usize>>,
    path_of: Vec<usize>,
    pos: Vec<usize>,
    light_level: Vec<usize>,
    top_parent: Vec<Option<usize>>,
}

pub fn hpd_build(tree: &RootedTree) -> HeavyPathDecomp {
    HeavyPathDecomp::new(tree)
}

impl HeavyPathDecomp {
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.n();
        let size = tree.subtree_sizes();
        let heavy: Vec<Option<usize>> = (0..n)
            .map(|a| tree.children(a).iter().copied().find(|&c| 2 * size[c] >= size[a]))
            .collect();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut path_of = vec![0; n];
        let mut pos = vec![0; n];
        let mut light_level = vec![0; n];
        let mut top_parent = Vec::new();
        for v in tree.preorder() {
            let p = tree.parent(v);
            let is_heavy = p.is_some_and(|p| heavy[p] == Some(v));
            if let Some(p) = p {
                light_level[v] = light_level[p] + usize::from(!is_heavy);
            }
            if is_heavy {
                let parent = p.expect("heavy child has a parent");
                let pid = path_of[parent];
                path_of[v] = pid;
                pos[v] = paths[pid].len();
                paths[pid].push(v);
            } else {
                path_of[v] = paths.len();
                pos[v] = 0;
                paths.push(vec![v]);
                top_parent.push(p);
            }
        }
        HeavyPathDecomp { heavy, paths, path_of, pos, light_level, top_parent }
    }

    pub fn heavy_child(&self, v: usize) -> Option<usize> {
        self.heavy[v]
    }

    /// Heavy paths, each listed from its topmost vertex down.
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn path_of(&self, v: usize) -> usize {
        self.path_of[v]
    }

    /// Index of `v` within its path, counted from the top.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Vertices below `v` on its heavy path.
    pub fn path_height(&self, v: usize) -> usize {
        self.paths[self.path_of[v]].len() - 1 - self.pos[v]
    }

    /// Light vertices on the path from `v` to the root, the root excluded.
    pub fn light_level(&self, v: usize) -> usize {
        self.light_level[v]
    }

    pub fn top_parent(&self, path: usize) -> Option<usize> {
        self.top_parent[path]
    }

    /// `(path, bottommost position)` for every heavy path met by the route
    /// from the root to `b`, starting at `b`'s own path.
    pub fn root_route(&self, b: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut cur = Some(b);
        std::iter::from_fn(move || {
            let v = cur?;
            let p = self.path_of[v];
            cur = self.top_parent[p];
            Some((p, self.pos[v]))
        })
    }
}

/// Reports the vertices `a` in `T(b)` with `label(a) > j`.
#[derive(Debug, Clone)]
pub struct InTreeLabelIndex {
    hpd: HeavyPathDecomp,
    labels: Vec<i64>,
    sub_max: Vec<i64>,
    light_max: Vec<i64>,
    light_children: Vec<Vec<usize>>,
    /// Per path: Cartesian tree over `(position, -light_max)`.
    path_ct: Vec<CartesianTree>,
}

impl InTreeLabelIndex {
    pub fn new(tree: &RootedTree, labels: Vec<i64>) -> Result<Self> {
        let n = tree.n();
        if labels.len() != n {
            return Err(crate::Error::VertexMismatch { left: n, right: labels.len() });
        }
        let hpd = HeavyPathDecomp::new(tree);
        let mut sub_max = labels.clone();
        let mut light_max = labels.clone();
        for v in tree.preorder().into_iter().rev() {
            for &c in tree.children(v) {
                sub_max[v] = sub_max[v].max(sub_max[c]);
                if hpd.heavy_child(v) != Some(c) {
                    light_max[v] = light_max[v].max(sub_max[c]);
                }
            }
        }
        let light_children = (0..n)
            .map(|v| {
                let mut cs: Vec<usize> =
                    tree.children(v).iter().copied().filter(|&c| hpd.heavy_child(v) != Some(c)).collect();
                cs.sort_by_key(|&c| (std::cmp::Reverse(sub_max[c]), c));
                cs
            })
            .collect();
        let path_ct = hpd
            .paths()
            .iter()
            .map(|p| {
                let pts = p.iter().enumerate().map(|(i, &v)| Point2::new(i as i64, -light_max[v], v)).collect();
                CartesianTree::new(pts)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InTreeLabelIndex { hpd, labels, sub_max, light_max, light_children, path_ct })
    }

    pub fn decomposition(&self) -> &HeavyPathDecomp {
        &self.hpd
    }

    /// Largest label in `T(v)`.
    pub fn subtree_max(&self, v: usize) -> i64 {
        self.sub_max[v]
    }

    /// Largest label in `T(v)` outside the heavy child's subtree.
    pub fn light_max(&self, v: usize) -> i64 {
        self.light_max[v]
    }

    pub fn report(&self, b: usize, j: i64, out: &mut Vec<usize>, probes: &mut usize) {
        let mut found = Vec::new();
        let p = self.hpd.path_of(b);
        self.path_ct[p].report_range(self.hpd.position(b), usize::MAX, -(j + 1), &mut found, probes);
        while let Some(d) = found.pop() {
            if self.labels[d] > j {
                out.push(d);
            }
            for &c in &self.light_children[d] {
                *probes += 1;
                if self.sub_max[c] <= j {
                    break;
                }
                let pc = self.hpd.path_of(c);
                self.path_ct[pc].report_range(0, usize::MAX, -(j + 1), &mut found, probes);
            }
        }
    }
}

/// Reports the ancestors `a` of `b` (inclusive) with `label(a) > j`.
#[derive(Debug, Clone)]
pub struct OutTreeLabelIndex {
    hpd: HeavyPathDecomp,
    /// Per path: Cartesian tree over `(position, -label)`.
    path_ct: Vec<CartesianTree>,
}

impl OutTreeLabelIndex {
    pub fn new(tree: &RootedTree, labels: &[i64]) -> Result<Self> {
        if labels.len() != tree.n() {
            return Err(crate::Error::VertexMismatch { left: tree.n(), right: labels.len() });
        }
        let hpd = HeavyPathDecomp::new(tree);
        let path_ct = hpd
            .paths()
            .iter()
            .map(|p| {
                let pts = p.iter().enumerate().map(|(i, &v)| Point2::new(i as i64, -labels[v], v)).collect();
                CartesianTree::new(pts)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OutTreeLabelIndex { hpd, path_ct })
    }

    pub fn decomposition(&self) -> &HeavyPathDecomp {
        &self.hpd
    }

    pub fn report(&self, b: usize, j: i64, out: &mut Vec<usize>, probes: &mut usize) {
        for (p, bottom) in self.hpd.root_route(b) {
            self.path_ct[p].report_range(0, bottom, -(j + 1), out, probes);
        }
    }
}

#[derive(Debug, Clone)]
enum PathStructure {
    /// `G2` out-tree: segments `I2(a)` at height `h_P(a)`.
    Segments(SegRayIndex),
    /// `G2` in-tree: points `(s2(a), position)`.
    Grounded(CartesianTree),
}

/// Join reachability for an out-tree `G1` and a rooted tree `G2` through
/// one secondary structure per heavy path of `G1`.
#[derive(Debug, Clone)]
pub struct HpdTwoTrees {
    hpd: HeavyPathDecomp,
    iv2: DfsIntervals,
    g2: Orientation,
    per_path: Vec<PathStructure>,
}

impl HpdTwoTrees {
    pub fn new(t1: &RootedTree, t2: &RootedTree) -> Result<Self> {
        if t1.orientation() != Orientation::Out {
            return Err(class_err("out-tree", "first tree must be an out-tree"));
        }
        if t1.n() != t2.n() {
            return Err(crate::Error::VertexMismatch { left: t1.n(), right: t2.n() });
        }
        let hpd = HeavyPathDecomp::new(t1);
        let iv2 = dfs_intervals(t2);
        let per_path = hpd
            .paths()
            .iter()
            .map(|path| -> Result<PathStructure> {
                Ok(match t2.orientation() {
                    Orientation::Out => {
                        let segs = path
                            .iter()
                            .map(|&a| HSegment::new(iv2.s[a] as i64, iv2.t[a] as i64, hpd.path_height(a) as i64, a))
                            .collect();
                        PathStructure::Segments(SegRayIndex::new(segs, &[])?)
                    }
                    Orientation::In => {
                        let pts = path
                            .iter()
                            .enumerate()
                            .map(|(i, &a)| Point2::new(iv2.s[a] as i64, i as i64, a))
                            .collect();
                        PathStructure::Grounded(CartesianTree::new(pts)?)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HpdTwoTrees { hpd, iv2, g2: t2.orientation(), per_path })
    }

    /// Every `a` reaching `b` in both trees, unsorted.
    pub fn report(&self, b: usize, out: &mut Vec<usize>, probes: &mut usize) {
        let (s2, t2) = (self.iv2.s[b] as i64, self.iv2.t[b] as i64);
        if self.g2 == Orientation::Out {
            out.push(b);
        }
        for (p, bottom) in self.hpd.root_route(b) {
            match &self.per_path[p] {
                PathStructure::Segments(idx) => {
                    let h = (self.hpd.paths()[p].len() - 1 - bottom) as i64;
                    idx.report_any(s2, h, out, probes);
                }
                PathStructure::Grounded(ct) => match ct.positions_within(s2, t2) {
                    Some((lo, hi)) => ct.report_range(lo, hi, bottom as i64, out, probes),
                    None => *probes += 1,
                },
            }
        }
    }
}
