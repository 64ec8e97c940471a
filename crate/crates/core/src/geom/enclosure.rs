use super::segray::{HSegment, SegRayIndex};
use crate::error::{Error, Result};

/// Axis-parallel rectangle `[x1_lo, x1_hi] × [x2_lo, x2_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x1_lo: i64,
    pub x1_hi: i64,
    pub x2_lo: i64,
    pub x2_hi: i64,
    pub payload: usize,
}

impl Rect {
    pub fn new(x1: (i64, i64), x2: (i64, i64), payload: usize) -> Self {
        Rect { x1_lo: x1.0, x1_hi: x1.1, x2_lo: x2.0, x2_hi: x2.1, payload }
    }

    pub fn strictly_contains(&self, q1: i64, q2: i64) -> bool {
        self.x1_lo < q1 && q1 < self.x1_hi && self.x2_lo < q2 && q2 < self.x2_hi
    }
}

#[derive(Debug, Clone)]
struct Node {
    /// Doubled coordinate, always odd, so it never equals a doubled query.
    center2: i64,
    left: Option<usize>,
    right: Option<usize>,
    /// Stored rectangles as `x2` spans at height `-x1_lo`.
    by_lo: SegRayIndex,
    /// Stored rectangles as `x2` spans at height `x1_hi`.
    by_hi: SegRayIndex,
}

/// Point enclosure: reports rectangles strictly containing a query point.
///
/// An interval tree on `x1` stores each rectangle at the highest node whose
/// center it spans. At a node only one side of the `x1` span can exclude the
/// query, which leaves a stabbing query in `x2` with a threshold on that side.
#[derive(Debug, Clone)]
pub struct EnclosureIndex {
    nodes: Vec<Node>,
    root: Option<usize>,
    len: usize,
}

impl EnclosureIndex {
    pub fn new(rects: Vec<Rect>) -> Result<Self> {
        for r in &rects {
            if r.x1_lo >= r.x1_hi {
                return Err(Error::MalformedRect { lo: r.x1_lo, hi: r.x1_hi });
            }
            if r.x2_lo >= r.x2_hi {
                return Err(Error::MalformedRect { lo: r.x2_lo, hi: r.x2_hi });
            }
        }
        let len = rects.len();
        let mut nodes = Vec::new();
        let root = Self::build(rects, &mut nodes)?;
        Ok(EnclosureIndex { nodes, root, len })
    }

    fn build(rects: Vec<Rect>, nodes: &mut Vec<Node>) -> Result<Option<usize>> {
        if rects.is_empty() {
            return Ok(None);
        }
        let mut ends: Vec<i64> = rects.iter().flat_map(|r| [r.x1_lo, r.x1_hi]).collect();
        let k = (ends.len() - 1) / 2;
        let (_, &mut median, _) = ends.select_nth_unstable(k);
        let center2 = 2 * median + 1;
        let (mut here, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new());
        for r in rects {
            if 2 * r.x1_hi < center2 {
                left.push(r);
            } else if 2 * r.x1_lo > center2 {
                right.push(r);
            } else {
                here.push(r);
            }
        }
        let seg = |r: &Rect, h: i64| HSegment::new(r.x2_lo, r.x2_hi, h, r.payload);
        let by_lo = SegRayIndex::new(here.iter().map(|r| seg(r, -r.x1_lo)).collect(), &[])?;
        let by_hi = SegRayIndex::new(here.iter().map(|r| seg(r, r.x1_hi)).collect(), &[])?;
        let id = nodes.len();
        nodes.push(Node { center2, left: None, right: None, by_lo, by_hi });
        let l = Self::build(left, nodes)?;
        let r = Self::build(right, nodes)?;
        nodes[id].left = l;
        nodes[id].right = r;
        Ok(Some(id))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rectangles strictly containing `(q1, q2)`.
    pub fn report(&self, q1: i64, q2: i64, out: &mut Vec<usize>, probes: &mut usize) {
        let mut cur = self.root;
        while let Some(id) = cur {
            let node = &self.nodes[id];
            if 2 * q1 < node.center2 {
                node.by_lo.report_any(q2, 1 - q1, out, probes);
                cur = node.left;
            } else {
                node.by_hi.report_any(q2, q1 + 1, out, probes);
                cur = node.right;
            }
        }
    }
}
