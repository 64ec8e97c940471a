use super::Point2;
use crate::error::{Error, Result};

/// Two-level range tree: a segment tree over points sorted by `x1` whose
/// nodes keep their points sorted by `x2`.
#[derive(Debug, Clone)]
pub struct RangeTree2D {
    xs: Vec<i64>,
    nodes: Vec<Vec<(i64, usize)>>,
}

impl RangeTree2D {
    pub fn new(mut points: Vec<Point2>) -> Self {
        points.sort_unstable_by_key(|p| (p.x1, p.x2, p.payload));
        let m = points.len();
        let mut nodes = vec![Vec::new(); 2 * m];
        for (i, p) in points.iter().enumerate() {
            nodes[m + i] = vec![(p.x2, p.payload)];
        }
        for i in (1..m).rev() {
            let mut merged = Vec::with_capacity(nodes[2 * i].len() + nodes[2 * i + 1].len());
            merged.extend_from_slice(&nodes[2 * i]);
            merged.extend_from_slice(&nodes[2 * i + 1]);
            merged.sort_unstable();
            nodes[i] = merged;
        }
        RangeTree2D { xs: points.iter().map(|p| p.x1).collect(), nodes }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Points in `[x1_lo, x1_hi] × [x2_lo, x2_hi]` (inclusive).
    pub fn report(&self, x1: (i64, i64), x2: (i64, i64), out: &mut Vec<usize>, probes: &mut usize) -> Result<()> {
        for (lo, hi) in [x1, x2] {
            if lo > hi {
                return Err(Error::MalformedRect { lo, hi });
            }
        }
        let m = self.xs.len();
        let mut l = self.xs.partition_point(|&x| x < x1.0) + m;
        let mut r = self.xs.partition_point(|&x| x <= x1.1) + m;
        let mut visit = |node: &[(i64, usize)], out: &mut Vec<usize>| {
            *probes += 1;
            let start = node.partition_point(|&(y, _)| y < x2.0);
            for &(y, p) in &node[start..] {
                if y > x2.1 {
                    break;
                }
                out.push(p);
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
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(n: i64) -> Vec<Point2> {
        (0..n * n).map(|i| Point2::new(2 * (i / n), 2 * (i % n), i as usize)).collect()
    }

    #[test]
    fn full_and_empty_strip() {
        let idx = RangeTree2D::new(grid(5));
        let mut out = Vec::new();
        idx.report((0, 8), (0, 8), &mut out, &mut 0).unwrap();
        assert_eq!(out.len(), 25);
        let mut out = Vec::new();
        idx.report((3, 3), (0, 8), &mut out, &mut 0).unwrap();
        assert!(out.is_empty());
        assert!(idx.report((3, 2), (0, 8), &mut out, &mut 0).is_err());
    }

    #[test]
    fn random_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let pts: Vec<Point2> =
                (0..200).map(|i| Point2::new(rng.gen_range(0..100), rng.gen_range(0..100), i)).collect();
            let idx = RangeTree2D::new(pts.clone());
            for _ in 0..50 {
                let (a, b) = (rng.gen_range(-5..105), rng.gen_range(-5..105));
                let (c, d) = (rng.gen_range(-5..105), rng.gen_range(-5..105));
                let (x1, x2) = ((a.min(b), a.max(b)), (c.min(d), c.max(d)));
                let mut out = Vec::new();
                idx.report(x1, x2, &mut out, &mut 0).unwrap();
                out.sort_unstable();
                let want: Vec<usize> = pts
                    .iter()
                    .filter(|p| x1.0 <= p.x1 && p.x1 <= x1.1 && x2.0 <= p.x2 && p.x2 <= x2.1)
                    .map(|p| p.payload)
                    .collect();
                assert_eq!(out, want);
            }
        }
    }
}
