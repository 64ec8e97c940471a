use std::collections::VecDeque;

use super::{topological_order, Digraph};
use crate::error::{Error, Result};

/// Square boolean relation stored as packed bit rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReachMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ReachMatrix {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        ReachMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::empty(n);
        for v in 0..n {
            m.set(v, v);
        }
        m
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                m.set(a, b);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn clear(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] &= !(1 << (b % 64));
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    /// `row(dst) |= row(src)`.
    pub fn or_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (d, s) = (dst * w, src * w);
        for i in 0..w {
            let x = self.bits[s + i];
            self.bits[d + i] |= x;
        }
    }

    /// Columns set in row `a`, ascending.
    pub fn row_iter(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(a).iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    /// Rows `a` with `get(a, b)`, i.e. the predecessors of `b`.
    pub fn column(&self, b: usize) -> Vec<usize> {
        (0..self.n).filter(|&a| self.get(a, b)).collect()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Entrywise conjunction.
    pub fn and(&self, other: &ReachMatrix) -> Result<ReachMatrix> {
        if self.n != other.n {
            return Err(Error::VertexMismatch { left: self.n, right: other.n });
        }
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        Ok(ReachMatrix { n: self.n, words: self.words, bits })
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.get(v, v))
    }

    /// Returns a witness `(a, b, c)` with `a→b`, `b→c` but not `a→c`, if any.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for b in self.row_iter(a) {
                let ra = self.row(a);
                let rb = self.row(b);
                if let Some(i) = (0..self.words).find(|&i| rb[i] & !ra[i] != 0) {
                    let c = i * 64 + (rb[i] & !ra[i]).trailing_zeros() as usize;
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Matrix of the relation restricted to the first `k` rows and columns.
    pub fn restrict(&self, k: usize) -> ReachMatrix {
        let mut m = ReachMatrix::empty(k);
        for a in 0..k {
            for b in self.row_iter(a).take_while(|&b| b < k) {
                m.set(a, b);
            }
        }
        m
    }
}

/// Reflexive-transitive closure of `g`.
///
/// Acyclic graphs are closed by OR-ing successor rows in reverse topological
/// order; graphs with cycles fall back to one BFS per source.
pub fn transitive_closure(g: &Digraph) -> ReachMatrix {
    let n = g.n();
    let mut m = ReachMatrix::identity(n);
    if let Some(order) = topological_order(g) {
        for &v in order.iter().rev() {
            for &w in g.out(v) {
                m.or_row(v, w);
            }
        }
        return m;
    }
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        seen[s] = s;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            m.set(s, v);
            for &w in g.out(v) {
                if seen[w] != s {
                    seen[w] = s;
                    queue.push_back(w);
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dfs_oracle(g: &Digraph) -> Vec<Vec<bool>> {
        (0..g.n())
            .map(|s| {
                let mut seen = vec![false; g.n()];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(v) = stack.pop() {
                    for &w in g.out(v) {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    #[test]
    fn single_vertex_is_reflexive() {
        let m = transitive_closure(&Digraph::new(1, []).unwrap());
        assert!(m.get(0, 0));
        assert_eq!(m.count(), 1);
    }

    #[test]
    fn dipath_is_total_order() {
        let m = transitive_closure(&Digraph::from_path(&[0, 1, 2]).unwrap());
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(m.get(a, b), a <= b);
            }
        }
    }

    #[test]
    fn matches_dfs_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let n = 20;
            let cyclic = trial % 2 == 1;
            let arcs: Vec<_> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| (cyclic || u < v) && u != v)
                .filter(|_| rng.gen_bool(0.12))
                .collect();
            let g = Digraph::new(n, arcs).unwrap();
            let m = transitive_closure(&g);
            let oracle = dfs_oracle(&g);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(m.get(a, b), oracle[a][b], "({a},{b})");
                }
            }
            assert!(m.is_reflexive());
            assert_eq!(m.transitivity_violation(), None);
        }
    }

    #[test]
    fn detects_non_transitive() {
        let mut m = ReachMatrix::identity(3);
        m.set(0, 1);
        m.set(1, 2);
        assert_eq!(m.transitivity_violation(), Some((0, 1, 2)));
    }

    #[test]
    fn wide_rows_iterate() {
        let mut m = ReachMatrix::empty(130);
        m.set(3, 0);
        m.set(3, 64);
        m.set(3, 129);
        assert_eq!(m.row_iter(3).collect::<Vec<_>>(), vec![0, 64, 129]);
    }
}
