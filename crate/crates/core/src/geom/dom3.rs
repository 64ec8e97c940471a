use super::{CartesianTree, Point2};
use crate::error::Result;

/// A point in three-dimensional rank space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: [i64; 3],
    pub payload: usize,
}

/// 3D dominance reporting: a segment tree on the first coordinate whose
/// nodes are Cartesian trees over the other two.
#[derive(Debug, Clone)]
pub struct Dominance3D {
    xs: Vec<i64>,
    nodes: Vec<CartesianTree>,
}

impl Dominance3D {
    pub fn new(mut points: Vec<Point3>) -> Result<Self> {
        points.sort_unstable_by_key(|p| (p.x, p.payload));
        let m = points.len();
        let mut members: Vec<Vec<Point2>> = vec![Vec::new(); 2 * m];
        for (i, p) in points.iter().enumerate() {
            members[m + i].push(Point2::new(p.x[1], p.x[2], p.payload));
        }
        for i in (1..m).rev() {
            let mut v = members[2 * i].clone();
            v.extend_from_slice(&members[2 * i + 1]);
            members[i] = v;
        }
        let nodes = members.into_iter().map(CartesianTree::multi_column).collect::<Result<Vec<_>>>()?;
        Ok(Dominance3D { xs: points.iter().map(|p| p.x[0]).collect(), nodes })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Points `p` with `p.x <= q` componentwise.
    pub fn report(&self, q: [i64; 3], out: &mut Vec<usize>, probes: &mut usize) {
        let m = self.xs.len();
        let mut l = m;
        let mut r = self.xs.partition_point(|&x| x <= q[0]) + m;
        let mut visit = |ct: &CartesianTree, out: &mut Vec<usize>| {
            *probes += 1;
            if let Some(hi) = ct.position_upto(q[1]) {
                ct.report_prefix(hi, q[2], out, probes);
            }
        };
        while l < r {
            if l & 1 == 1 {
                visit(&self.nodes[l], out);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                visit(&self.nodes[r], out);
            }
            l >>= 1;
            r >>= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn permutation_points_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for n in [1usize, 2, 7, 64, 150] {
            let mut axes: Vec<Vec<i64>> = (0..3).map(|_| (0..n as i64).collect()).collect();
            for a in &mut axes {
                a.shuffle(&mut rng);
            }
            let pts: Vec<Point3> = (0..n).map(|i| Point3 { x: [axes[0][i], axes[1][i], axes[2][i]], payload: i }).collect();
            let idx = Dominance3D::new(pts.clone()).unwrap();
            for b in &pts {
                let mut out = Vec::new();
                idx.report(b.x, &mut out, &mut 0);
                out.sort_unstable();
                let want: Vec<usize> =
                    pts.iter().filter(|p| (0..3).all(|k| p.x[k] <= b.x[k])).map(|p| p.payload).collect();
                assert_eq!(out, want);
            }
        }
    }
}
