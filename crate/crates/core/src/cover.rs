//! Vertex-disjoint dipath covers of DAGs and per-path from-ranks.

use std::collections::VecDeque;

use crate::error::{class_err, Error, Result};
use crate::graph::{topological_order, Digraph};

/// Vertex-disjoint dipaths covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCover {
    paths: Vec<Vec<usize>>,
    path_of: Vec<(usize, usize)>,
}

impl PathCover {
    /// Validates `paths` against `g`: disjoint, covering, consecutive
    /// vertices joined by arcs.
    pub fn from_paths(g: &Digraph, paths: Vec<Vec<usize>>) -> Result<Self> {
        let n = g.n();
        let mut path_of = vec![(usize::MAX, 0); n];
        for (i, p) in paths.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidParameter("empty path in cover".into()));
            }
            for (r, &v) in p.iter().enumerate() {
                g.check_vertex(v)?;
                if path_of[v].0 != usize::MAX {
                    return Err(Error::InvalidParameter(format!("vertex {v} covered twice")));
                }
                path_of[v] = (i, r);
            }
            for w in p.windows(2) {
                if !g.has_arc(w[0], w[1]) {
                    return Err(Error::InvalidParameter(format!("({}, {}) is not an arc", w[0], w[1])));
                }
            }
        }
        if let Some(v) = path_of.iter().position(|p| p.0 == usize::MAX) {
            return Err(Error::InvalidParameter(format!("vertex {v} not covered")));
        }
        Ok(PathCover { paths, path_of })
    }

    pub fn kappa(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    /// `(path index, rank on that path)`.
    pub fn path_of(&self, v: usize) -> (usize, usize) {
        self.path_of[v]
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.kappa());
        for p in &self.paths {
            let line: Vec<String> = p.iter().map(usize::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(g: &Digraph, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing kappa".into() })?;
        let kappa: usize =
            first.trim().parse().map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad kappa {first:?}") })?;
        let mut paths = Vec::with_capacity(kappa);
        for (ln, line) in lines {
            let p = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad vertex {t:?}") }))
                .collect::<Result<Vec<usize>>>()?;
            paths.push(p);
        }
        if paths.len() != kappa {
            return Err(Error::Parse { line: 1, msg: format!("expected {kappa} paths, found {}", paths.len()) });
        }
        Self::from_paths(g, paths)
    }
}

fn require_dag(g: &Digraph) -> Result<Vec<usize>> {
    topological_order(g).ok_or(Error::Cyclic)
}

fn chains_from_successor(n: usize, succ: &[Option<usize>], has_pred: &[bool]) -> Vec<Vec<usize>> {
    let mut paths = Vec::new();
    for v in 0..n {
        if has_pred[v] {
            continue;
        }
        let mut p = vec![v];
        let mut cur = v;
        while let Some(w) = succ[cur] {
            p.push(w);
            cur = w;
        }
        paths.push(p);
    }
    paths
}

/// Minimum cover via maximum matching between out-copies and in-copies
/// (Hopcroft–Karp).
pub fn min_path_cover(g: &Digraph) -> Result<PathCover> {
    require_dag(g)?;
    let n = g.n();
    const FREE: usize = usize::MAX;
    let mut match_l = vec![FREE; n];
    let mut match_r = vec![FREE; n];
    let mut dist = vec![0usize; n];
    loop {
        let mut queue = VecDeque::new();
        for u in 0..n {
            if match_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.out(u) {
                let w = match_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n];
        for root in 0..n {
            if match_l[root] != FREE {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                let adj = g.out(u);
                if it[u] == adj.len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[it[u]];
                it[u] += 1;
                let w = match_r[v];
                if w == FREE {
                    // Augment along the stack.
                    let mut v = v;
                    while let Some(u) = stack.pop() {
                        let prev = match_l[u];
                        match_l[u] = v;
                        match_r[v] = u;
                        v = prev;
                    }
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }
    let succ: Vec<Option<usize>> = match_l.iter().map(|&v| (v != FREE).then_some(v)).collect();
    let has_pred: Vec<bool> = match_r.iter().map(|&u| u != FREE).collect();
    PathCover::from_paths(g, chains_from_successor(n, &succ, &has_pred))
}

/// Cover built by repeatedly removing a longest path among the remaining
/// vertices. Not minimum in general, but cheap to reason about.
pub fn greedy_path_cover(g: &Digraph) -> Result<PathCover> {
    let order = require_dag(g)?;
    let n = g.n();
    let mut alive = vec![true; n];
    let mut left = n;
    let mut paths = Vec::new();
    while left > 0 {
        let mut len = vec![0usize; n];
        let mut next = vec![None; n];
        for &v in order.iter().rev() {
            if !alive[v] {
                continue;
            }
            for &w in g.out(v) {
                if alive[w] && len[w] + 1 > len[v] {
                    len[v] = len[w] + 1;
                    next[v] = Some(w);
                }
            }
        }
        let start = (0..n).filter(|&v| alive[v]).max_by_key(|&v| (len[v], std::cmp::Reverse(v))).expect("alive vertex");
        let mut p = vec![start];
        let mut cur = start;
        while let Some(w) = next[cur] {
            p.push(w);
            cur = w;
        }
        for &v in &p {
            alive[v] = false;
        }
        left -= p.len();
        paths.push(p);
    }
    PathCover::from_paths(g, paths)
}

/// `from_v[P]`: rank of the highest vertex of path `P` reaching `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FromRanks {
    kappa: usize,
    from: Vec<Option<u32>>,
}

impl FromRanks {
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn get(&self, v: usize, path: usize) -> Option<usize> {
        self.from[v * self.kappa + path].map(|r| r as usize)
    }

    /// Paths with at least one predecessor of `v`, with their from-rank.
    pub fn nonempty(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.kappa).filter_map(move |i| self.get(v, i).map(|r| (i, r)))
    }
}

pub fn from_ranks(g: &Digraph, pc: &PathCover) -> Result<FromRanks> {
    let order = require_dag(g)?;
    let n = g.n();
    if pc.path_of.len() != n {
        return Err(Error::VertexMismatch { left: n, right: pc.path_of.len() });
    }
    let kappa = pc.kappa();
    let mut from: Vec<Option<u32>> = vec![None; n * kappa];
    for &v in &order {
        let (pi, r) = pc.path_of(v);
        let row = v * kappa;
        from[row + pi] = Some(r as u32);
        for &u in g.inn(v) {
            for i in 0..kappa {
                let cand = from[u * kappa + i];
                if cand > from[row + i] {
                    from[row + i] = cand;
                }
            }
        }
    }
    Ok(FromRanks { kappa, from })
}

/// Cover of a graph that must itself be a single dipath.
pub fn dipath_cover(g: &Digraph) -> Result<PathCover> {
    let order = g.dipath_order().map_err(|_| class_err("dipath", "graph is not a single dipath"))?;
    PathCover::from_paths(g, vec![order])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::transitive_closure;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_dag(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    arcs.push((a, b));
                }
            }
        }
        Digraph::new(n, arcs).unwrap()
    }

    /// Maximum matching by plain augmenting paths (Kuhn).
    fn kuhn(g: &Digraph) -> usize {
        fn aug(u: usize, g: &Digraph, seen: &mut [bool], mr: &mut [Option<usize>]) -> bool {
            for &v in g.out(u) {
                if !seen[v] {
                    seen[v] = true;
                    if mr[v].is_none() || aug(mr[v].unwrap(), g, seen, mr) {
                        mr[v] = Some(u);
                        return true;
                    }
                }
            }
            false
        }
        let mut mr = vec![None; g.n()];
        (0..g.n()).filter(|&u| aug(u, g, &mut vec![false; g.n()], &mut mr)).count()
    }

    #[test]
    fn dipath_and_antichain() {
        let p = Digraph::from_path(&[3, 1, 0, 2]).unwrap();
        assert_eq!(min_path_cover(&p).unwrap().paths(), &[vec![3, 1, 0, 2]]);
        let a = Digraph::new(5, []).unwrap();
        assert_eq!(min_path_cover(&a).unwrap().kappa(), 5);
        assert_eq!(dipath_cover(&p).unwrap().kappa(), 1);
    }

    #[test]
    fn cyclic_rejected() {
        let g = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(min_path_cover(&g).unwrap_err(), Error::Cyclic);
    }

    #[test]
    fn minimum_matches_matching_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..50 {
            let g = random_dag(30, rng.gen_range(0.02..0.3), &mut rng);
            let pc = min_path_cover(&g).unwrap();
            assert_eq!(pc.kappa(), 30 - kuhn(&g));
            let greedy = greedy_path_cover(&g).unwrap();
            assert!(greedy.kappa() >= pc.kappa());
        }
    }

    #[test]
    fn from_ranks_match_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..30 {
            let n = rng.gen_range(1..40);
            let g = random_dag(n, 0.1, &mut rng);
            let pc = min_path_cover(&g).unwrap();
            let fr = from_ranks(&g, &pc).unwrap();
            let reach = transitive_closure(&g);
            for v in 0..n {
                for (i, p) in pc.paths().iter().enumerate() {
                    let want = p.iter().rposition(|&z| reach.get(z, v));
                    assert_eq!(fr.get(v, i), want);
                }
            }
            for &(u, v) in g.arcs() {
                for i in 0..pc.kappa() {
                    if let (Some(a), Some(b)) = (fr.get(u, i), fr.get(v, i)) {
                        assert!(a <= b);
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = Digraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let pc = min_path_cover(&g).unwrap();
        assert_eq!(PathCover::parse(&g, &pc.to_text()).unwrap(), pc);
        assert!(PathCover::parse(&g, "1\n0 1 2 3\n").is_err());
    }
}
