use crate::error::{Error, Result};
use crate::graph::{NcaIndex, Orientation, RootedTree};

/// A point on the integer grid carrying the id of the vertex it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x1: i64,
    pub x2: i64,
    pub payload: usize,
}

impl Point2 {
    pub fn new(x1: i64, x2: i64, payload: usize) -> Self {
        Point2 { x1, x2, payload }
    }
}

/// Cartesian tree: in-order by `x1`, min-heap on `x2`. Points sharing an
/// `x1` form a column; the lowest one sits in the tree and the rest hang off
/// it in an overflow list sorted by `x2`.
///
/// Nodes are addressed by position (column index in `x1` order).
#[derive(Debug, Clone)]
pub struct CartesianTree {
    cols: Vec<Point2>,
    overflow: Vec<Vec<Point2>>,
    parent: Vec<Option<usize>>,
    root: Option<usize>,
    nca: Option<NcaIndex>,
    direct: Option<(i64, Vec<u32>)>,
}

const NO_COL: u32 = u32::MAX;

impl CartesianTree {
    /// Builds a tree over points with distinct `x1`.
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        Self::build(points, false)
    }

    /// Builds a tree that accepts repeated `x1` values.
    pub fn multi_column(points: Vec<Point2>) -> Result<Self> {
        Self::build(points, true)
    }

    fn build(mut points: Vec<Point2>, multi: bool) -> Result<Self> {
        points.sort_unstable_by_key(|p| (p.x1, p.x2));
        let mut cols: Vec<Point2> = Vec::with_capacity(points.len());
        let mut overflow: Vec<Vec<Point2>> = Vec::with_capacity(points.len());
        for p in points {
            match cols.last() {
                Some(c) if c.x1 == p.x1 => {
                    let last = overflow.last_mut().expect("column").last().copied().unwrap_or(*c);
                    if last.x2 == p.x2 {
                        return Err(Error::DuplicatePoint(p.x1, p.x2));
                    }
                    if !multi {
                        return Err(Error::InvalidParameter(format!(
                            "repeated x1 = {} needs a multi-column tree",
                            p.x1
                        )));
                    }
                    overflow.last_mut().expect("column").push(p);
                }
                _ => {
                    cols.push(p);
                    overflow.push(Vec::new());
                }
            }
        }
        let m = cols.len();
        let mut parent = vec![None; m];
        let mut stack: Vec<usize> = Vec::new();
        for i in 0..m {
            let mut last = None;
            while let Some(&top) = stack.last() {
                if cols[top].x2 > cols[i].x2 {
                    last = stack.pop();
                } else {
                    break;
                }
            }
            if let Some(l) = last {
                parent[l] = Some(i);
            }
            if let Some(&top) = stack.last() {
                parent[i] = Some(top);
            }
            stack.push(i);
        }
        let root = stack.first().copied();
        let nca = if m == 0 {
            None
        } else {
            let shape = RootedTree::from_parents(parent.clone(), Orientation::Out)?;
            Some(NcaIndex::new(&shape))
        };
        let direct = match (cols.first(), cols.last()) {
            (Some(first), Some(last)) if ((last.x1 - first.x1) as u64) <= 4 * m as u64 + 16 => {
                let base = first.x1;
                let mut table = vec![NO_COL; (last.x1 - base + 1) as usize];
                let mut c = 0;
                for (off, slot) in table.iter_mut().enumerate() {
                    while c + 1 < m && cols[c + 1].x1 <= base + off as i64 {
                        c += 1;
                    }
                    *slot = c as u32;
                }
                Some((base, table))
            }
            _ => None,
        };
        Ok(CartesianTree { cols, overflow, parent, root, nca, direct })
    }

    /// Number of columns (tree nodes).
    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.cols.len() + self.overflow.iter().map(Vec::len).sum::<usize>()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn parent(&self, pos: usize) -> Option<usize> {
        self.parent[pos]
    }

    /// Lowest point of column `pos`.
    pub fn column(&self, pos: usize) -> Point2 {
        self.cols[pos]
    }

    /// Position holding the minimum `x2` among columns `lo..=hi`.
    pub fn range_min(&self, lo: usize, hi: usize) -> usize {
        self.nca.as_ref().expect("non-empty tree").nca(lo, hi)
    }

    /// Last column with `x1 <= x`.
    pub fn position_upto(&self, x: i64) -> Option<usize> {
        if let Some((base, table)) = &self.direct {
            if x < *base {
                return None;
            }
            return Some(table.get((x - base) as usize).map_or(self.cols.len() - 1, |&c| c as usize));
        }
        self.cols.partition_point(|p| p.x1 <= x).checked_sub(1)
    }

    /// First column with `x1 >= x`.
    pub fn position_from(&self, x: i64) -> usize {
        self.cols.partition_point(|p| p.x1 < x)
    }

    /// Columns whose `x1` lies in `[lo, hi]`, as an inclusive position range.
    pub fn positions_within(&self, lo: i64, hi: i64) -> Option<(usize, usize)> {
        let a = self.position_from(lo);
        let b = self.position_upto(hi)?;
        (a <= b).then_some((a, b))
    }

    /// Reports every point in columns `lo..=hi` with `x2 <= ymax`. Each tree
    /// probe and each overflow step adds one to `probes`.
    pub fn report_range(&self, lo: usize, hi: usize, ymax: i64, out: &mut Vec<usize>, probes: &mut usize) {
        if self.cols.is_empty() || lo > hi {
            return;
        }
        let hi = hi.min(self.cols.len() - 1);
        let mut stack = vec![(lo, hi)];
        while let Some((l, h)) = stack.pop() {
            *probes += 1;
            let y = self.range_min(l, h);
            let p = self.cols[y];
            if p.x2 > ymax {
                continue;
            }
            out.push(p.payload);
            for q in &self.overflow[y] {
                *probes += 1;
                if q.x2 > ymax {
                    break;
                }
                out.push(q.payload);
            }
            if y > l {
                stack.push((l, y - 1));
            }
            if y < h {
                stack.push((y + 1, h));
            }
        }
    }

    pub fn report_prefix(&self, hi: usize, ymax: i64, out: &mut Vec<usize>, probes: &mut usize) {
        self.report_range(0, hi, ymax, out, probes);
    }

    /// Points `a` with `x1(a) <= x1` and `x2(a) <= x2`, with the probe count.
    pub fn dominance_report(&self, x1: i64, x2: i64) -> (Vec<usize>, usize) {
        let mut out = Vec::new();
        let mut probes = 0;
        if let Some(hi) = self.position_upto(x1) {
            self.report_prefix(hi, x2, &mut out, &mut probes);
        } else {
            probes += 1;
        }
        (out, probes)
    }
}
