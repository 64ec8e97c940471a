//! Path utilities: splitting unoriented paths, rank-space coordinates and
//! the bit-reversal instance.

use crate::error::{class_err, Error, Result};
use crate::graph::{Digraph, GraphKind};

/// Splits a path with arbitrarily oriented arcs into maximal dipaths.
///
/// Each returned vector lists its vertices in arc direction. Consecutive
/// subpaths share their turning vertex, so each vertex lies in at most two.
pub fn split_unoriented_path(p: &Digraph) -> Result<Vec<Vec<usize>>> {
    const WHAT: &str = "unoriented path";
    let n = p.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    if !p.is_undirected_tree() {
        return Err(class_err(WHAT, "underlying graph is not a path"));
    }
    if (0..n).any(|v| p.neighbours(v).len() > 2) {
        return Err(class_err(WHAT, "vertex of degree above two"));
    }
    let start = (0..n).find(|&v| p.neighbours(v).len() <= 1).expect("a tree has a leaf");
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = p.neighbours(cur).iter().find(|&&w| w != prev) {
        walk.push(next);
        prev = cur;
        cur = next;
    }
    if walk.len() == 1 {
        return Ok(vec![walk]);
    }
    let forward = |i: usize| p.has_arc(walk[i], walk[i + 1]);
    let mut out = Vec::new();
    let mut begin = 0;
    for i in 1..walk.len() {
        let end = i == walk.len() - 1;
        if end || forward(i) != forward(begin) {
            let mut seg = walk[begin..=i].to_vec();
            if !forward(begin) {
                seg.reverse();
            }
            out.push(seg);
            begin = i;
        }
    }
    Ok(out)
}

/// Per-vertex coordinates, each axis a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSpaceMap {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
}

impl RankSpaceMap {
    /// Coordinates given by the ranks along two dipaths over the same vertices.
    pub fn from_paths(p1: &Digraph, p2: &Digraph) -> Result<Self> {
        if p1.n() != p2.n() {
            return Err(Error::VertexMismatch { left: p1.n(), right: p2.n() });
        }
        Ok(RankSpaceMap { x1: p1.path_ranks()?, x2: p2.path_ranks()? })
    }

    pub fn n(&self) -> usize {
        self.x1.len()
    }

    /// `a` dominates-from `b`: `x1(a) <= x1(b)` and `x2(a) <= x2(b)`.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.x1[a] <= self.x1[b] && self.x2[a] <= self.x2[b]
    }

    pub fn is_rank_space(&self) -> bool {
        let perm = |x: &[usize]| {
            let mut seen = vec![false; x.len()];
            x.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
        };
        self.x1.len() == self.x2.len() && perm(&self.x1) && perm(&self.x2)
    }
}

fn bits_of(n: usize) -> Result<u32> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros())
}

fn reverse_bits(v: usize, bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        v.reverse_bits() >> (usize::BITS - bits)
    }
}

/// Two dipaths where the second rank of every vertex is the bit reversal of
/// its first rank. Vertex `a` has first rank `a`.
pub fn gen_bitreversal(n: usize) -> Result<(Digraph, Digraph)> {
    let bits = bits_of(n)?;
    let p1: Vec<usize> = (0..n).collect();
    let p2: Vec<usize> = (0..n).map(|k| reverse_bits(k, bits)).collect();
    Ok((
        Digraph::from_path(&p1)?.with_kind(GraphKind::Path)?,
        Digraph::from_path(&p2)?.with_kind(GraphKind::Path)?,
    ))
}

/// Pairs of vertices of the bit-reversal instance whose first ranks differ in
/// exactly one bit, lower rank first. All are related in both paths.
pub fn bitreversal_pairs(n: usize) -> Result<Vec<(usize, usize)>> {
    let bits = bits_of(n)?;
    let mut out = Vec::with_capacity(n / 2 * bits as usize);
    for i in 0..bits {
        for a in 0..n {
            if a & (1 << i) == 0 {
                out.push((a, a | (1 << i)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn oriented_path_is_itself() {
        let p = Digraph::from_path(&[2, 0, 3, 1]).unwrap();
        assert_eq!(split_unoriented_path(&p).unwrap(), vec![vec![2, 0, 3, 1]]);
    }

    #[test]
    fn alternating_path_splits_into_arcs() {
        let p = Digraph::new(5, [(0, 1), (2, 1), (2, 3), (4, 3)]).unwrap();
        let parts = split_unoriented_path(&p).unwrap();
        assert_eq!(parts, vec![vec![0, 1], vec![2, 1], vec![2, 3], vec![4, 3]]);
    }

    #[test]
    fn random_split_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..20 {
            let n = 50;
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let arcs: Vec<_> = order
                .windows(2)
                .map(|w| if rng.gen_bool(0.5) { (w[0], w[1]) } else { (w[1], w[0]) })
                .collect();
            let p = Digraph::new(n, arcs.clone()).unwrap();
            let parts = split_unoriented_path(&p).unwrap();
            let mut covered: Vec<(usize, usize)> = Vec::new();
            let mut mult = vec![0; n];
            for seg in &parts {
                for w in seg.windows(2) {
                    covered.push((w[0], w[1]));
                }
                for &v in seg {
                    mult[v] += 1;
                }
            }
            covered.sort_unstable();
            let mut want = arcs;
            want.sort_unstable();
            assert_eq!(covered, want);
            assert!(mult.iter().all(|&m| (1..=2).contains(&m)));
        }
    }

    #[test]
    fn not_a_path() {
        let star = Digraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(split_unoriented_path(&star).is_err());
    }

    #[test]
    fn bitreversal_coordinates() {
        let (p1, p2) = gen_bitreversal(16).unwrap();
        let map = RankSpaceMap::from_paths(&p1, &p2).unwrap();
        assert!(map.is_rank_space());
        assert_eq!(map.x1[1], 1);
        assert_eq!(map.x2[1], 8);
        let (q1, q2) = gen_bitreversal(2).unwrap();
        assert_eq!(q1.path_ranks().unwrap(), q2.path_ranks().unwrap());
        assert_eq!(bitreversal_pairs(16).unwrap().len(), 32);
        let (r1, r2) = gen_bitreversal(64).unwrap();
        let big = RankSpaceMap::from_paths(&r1, &r2).unwrap();
        for (a, b) in bitreversal_pairs(64).unwrap() {
            assert!(big.dominates(a, b));
        }
        assert_eq!(gen_bitreversal(12).unwrap_err(), Error::NotPowerOfTwo(12));
    }
}
