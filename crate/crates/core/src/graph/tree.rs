use super::{Digraph, GraphKind};
use crate::error::{class_err, Error, Result};

/// Direction of the arcs of a rooted tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Arcs point away from the root: ancestors reach descendants.
    Out,
    /// Arcs point towards the root: descendants reach ancestors.
    In,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Out => Orientation::In,
            Orientation::In => Orientation::Out,
        }
    }
}

/// A rooted tree with children kept in increasing id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    orientation: Orientation,
}

impl RootedTree {
    pub fn from_parents(parent: Vec<Option<usize>>, orientation: Orientation) -> Result<Self> {
        let n = parent.len();
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => return Err(class_err("rooted tree", "more than one root")),
                None => root = Some(v),
                Some(p) if p >= n => return Err(Error::VertexOutOfRange { vertex: p, n }),
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| class_err("rooted tree", "no root"))?;
        let t = RootedTree { root, parent, children, orientation };
        if t.preorder().len() != n {
            return Err(class_err("rooted tree", "parent links contain a cycle"));
        }
        Ok(t)
    }

    /// Reads a rooted tree off an out-tree or in-tree digraph. Untagged graphs
    /// are accepted when their orientation is unambiguous.
    pub fn from_digraph(g: &Digraph) -> Result<Self> {
        const WHAT: &str = "rooted tree";
        let n = g.n();
        if n == 0 || g.arc_count() != n - 1 {
            return Err(class_err(WHAT, "arc count must be n-1"));
        }
        let out_ok = (0..n).all(|v| g.inn(v).len() <= 1);
        let in_ok = (0..n).all(|v| g.out(v).len() <= 1);
        let orientation = match g.kind() {
            GraphKind::OutTree if out_ok => Orientation::Out,
            GraphKind::InTree if in_ok => Orientation::In,
            GraphKind::OutTree | GraphKind::InTree => {
                return Err(class_err(WHAT, "arc orientation does not match kind"))
            }
            _ if out_ok => Orientation::Out,
            _ if in_ok => Orientation::In,
            _ => return Err(class_err(WHAT, "arcs are not consistently oriented")),
        };
        let parent = (0..n)
            .map(|v| match orientation {
                Orientation::Out => g.inn(v).first().copied(),
                Orientation::In => g.out(v).first().copied(),
            })
            .collect();
        Self::from_parents(parent, orientation)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_parents(&self.parent, self.orientation).expect("valid tree")
    }

    /// Vertices in depth-first preorder, children by increasing id.
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                d[v] = d[p] + 1;
            }
        }
        d
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.n()];
        for v in self.preorder().into_iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }
}

/// First/last visit times of a depth-first traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsIntervals {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl DfsIntervals {
    /// `a` is an ancestor of `b` (or `a == b`).
    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.s[a] <= self.s[b] && self.t[b] <= self.t[a]
    }
}

/// Counter-based DFS intervals: the counter is bumped on entering and on
/// leaving every vertex, so all `2n` values are distinct and lie in `[1, 2n]`.
pub fn dfs_intervals(tree: &RootedTree) -> DfsIntervals {
    let n = tree.n();
    let mut s = vec![0; n];
    let mut t = vec![0; n];
    let mut clock = 0;
    let mut stack = vec![(tree.root(), 0usize)];
    clock += 1;
    s[tree.root()] = clock;
    while let Some((v, i)) = stack.last_mut() {
        let v = *v;
        if let Some(&c) = tree.children(v).get(*i) {
            *i += 1;
            clock += 1;
            s[c] = clock;
            stack.push((c, 0));
        } else {
            clock += 1;
            t[v] = clock;
            stack.pop();
        }
    }
    DfsIntervals { s, t }
}

/// Range-minimum over a fixed key array, answering with the index of the
/// leftmost minimum.
#[derive(Debug, Clone)]
pub(crate) struct SparseTable {
    keys: Vec<i64>,
    table: Vec<Vec<u32>>,
}

impl SparseTable {
    pub(crate) fn new(keys: Vec<i64>) -> Self {
        let len = keys.len();
        let mut table: Vec<Vec<u32>> = vec![(0..len as u32).collect()];
        let mut span = 1;
        while 2 * span <= len {
            let prev = table.last().expect("level");
            let next = (0..=len - 2 * span)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + span]);
                    if keys[b as usize] < keys[a as usize] { b } else { a }
                })
                .collect();
            table.push(next);
            span *= 2;
        }
        SparseTable { keys, table }
    }

    /// Index of the minimum key in `lo..=hi`.
    #[inline]
    pub(crate) fn argmin(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let a = self.table[level][lo];
        let b = self.table[level][hi + 1 - (1 << level)];
        if self.keys[b as usize] < self.keys[a as usize] { b as usize } else { a as usize }
    }
}

/// Nearest-common-ancestor queries via an Euler tour and a sparse table.
#[derive(Debug, Clone)]
pub struct NcaIndex {
    euler: Vec<usize>,
    first: Vec<usize>,
    rmq: SparseTable,
}

pub fn nca_build(tree: &RootedTree) -> NcaIndex {
    NcaIndex::new(tree)
}

impl NcaIndex {
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.n();
        let mut euler = Vec::with_capacity(2 * n);
        let mut depth = Vec::with_capacity(2 * n);
        let mut first = vec![0; n];
        let mut stack = vec![(tree.root(), 0usize, 0i64)];
        first[tree.root()] = 0;
        euler.push(tree.root());
        depth.push(0);
        while let Some(&mut (v, ref mut i, d)) = stack.last_mut() {
            if let Some(&c) = tree.children(v).get(*i) {
                *i += 1;
                first[c] = euler.len();
                euler.push(c);
                depth.push(d + 1);
                stack.push((c, 0, d + 1));
            } else {
                stack.pop();
                if let Some(&(p, _, pd)) = stack.last() {
                    euler.push(p);
                    depth.push(pd);
                }
            }
        }
        NcaIndex { euler, first, rmq: SparseTable::new(depth) }
    }

    pub fn query(&self, a: usize, b: usize) -> Result<usize> {
        let n = self.first.len();
        for v in [a, b] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(self.nca(a, b))
    }

    #[inline]
    pub(crate) fn nca(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.first[a], self.first[b]);
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        self.euler[self.rmq.argmin(lo, hi)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> RootedTree {
        let parent = (0..n).map(|v| (v > 0).then(|| rng.gen_range(0..v))).collect();
        RootedTree::from_parents(parent, Orientation::Out).unwrap()
    }

    fn walk_up_ancestor(t: &RootedTree, a: usize, mut b: usize) -> bool {
        loop {
            if a == b {
                return true;
            }
            match t.parent(b) {
                Some(p) => b = p,
                None => return false,
            }
        }
    }

    #[test]
    fn single_vertex_interval() {
        let t = RootedTree::from_parents(vec![None], Orientation::Out).unwrap();
        let iv = dfs_intervals(&t);
        assert_eq!((iv.s[0], iv.t[0]), (1, 2));
    }

    #[test]
    fn root_with_two_leaves() {
        let t = RootedTree::from_parents(vec![None, Some(0), Some(0)], Orientation::Out).unwrap();
        let iv = dfs_intervals(&t);
        assert_eq!((iv.s[0], iv.t[0]), (1, 6));
        assert_eq!((iv.s[1], iv.t[1]), (2, 3));
        assert_eq!((iv.s[2], iv.t[2]), (4, 5));
    }

    #[test]
    fn intervals_are_laminar_and_encode_ancestry() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_tree(50, &mut rng);
        let iv = dfs_intervals(&t);
        let mut all: Vec<usize> = iv.s.iter().chain(&iv.t).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (1..=100).collect::<Vec<_>>());
        for a in 0..50 {
            assert!(iv.s[a] < iv.t[a]);
            for b in 0..50 {
                let disjoint = iv.t[a] < iv.s[b] || iv.t[b] < iv.s[a];
                assert!(disjoint || iv.contains(a, b) || iv.contains(b, a));
                assert_eq!(iv.contains(a, b), walk_up_ancestor(&t, a, b));
            }
        }
    }

    #[test]
    fn from_digraph_detects_orientation() {
        let g = Digraph::new(3, [(1, 0), (2, 0)]).unwrap();
        let t = RootedTree::from_digraph(&g).unwrap();
        assert_eq!(t.orientation(), Orientation::In);
        assert_eq!(t.root(), 0);
        let mixed = Digraph::new(3, [(0, 1), (2, 1), (2, 0)]).unwrap();
        assert!(RootedTree::from_digraph(&mixed).is_err());
        let bent = Digraph::new(4, [(0, 1), (2, 1), (2, 3)]).unwrap();
        assert!(RootedTree::from_digraph(&bent).is_err());
    }

    #[test]
    fn nca_identity_and_chain() {
        let t = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(2)], Orientation::Out).unwrap();
        let idx = nca_build(&t);
        for a in 0..4 {
            assert_eq!(idx.query(a, a).unwrap(), a);
            for b in 0..4 {
                assert_eq!(idx.query(a, b).unwrap(), a.min(b));
            }
        }
        assert!(idx.query(0, 4).is_err());
    }

    #[test]
    fn nca_matches_walk_up() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = random_tree(64, &mut rng);
        let idx = nca_build(&t);
        let depth = t.depths();
        for a in 0..64 {
            for b in 0..64 {
                let (mut x, mut y) = (a, b);
                while depth[x] > depth[y] {
                    x = t.parent(x).unwrap();
                }
                while depth[y] > depth[x] {
                    y = t.parent(y).unwrap();
                }
                while x != y {
                    x = t.parent(x).unwrap();
                    y = t.parent(y).unwrap();
                }
                assert_eq!(idx.query(a, b).unwrap(), x);
            }
        }
    }

    #[test]
    fn sparse_table_leftmost_minimum() {
        let st = SparseTable::new(vec![5, 1, 3, 1, 4]);
        assert_eq!(st.argmin(0, 4), 1);
        assert_eq!(st.argmin(2, 4), 3);
        assert_eq!(st.argmin(4, 4), 4);
    }
}
