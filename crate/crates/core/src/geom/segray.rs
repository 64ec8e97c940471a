use std::collections::{BTreeMap, HashMap};
use std::ops::Bound::{Excluded, Unbounded};

use crate::error::{Error, Result};

/// Horizontal segment `[x1_lo, x1_hi] × x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HSegment {
    pub x1_lo: i64,
    pub x1_hi: i64,
    pub x2: i64,
    pub payload: usize,
}

impl HSegment {
    pub fn new(x1_lo: i64, x1_hi: i64, x2: i64, payload: usize) -> Self {
        HSegment { x1_lo, x1_hi, x2, payload }
    }
}

const NIL: u32 = u32::MAX;

/// Sorted singly linked list made persistent by node copying: every node
/// carries two timestamped `next` overrides, and a full node is copied.
#[derive(Debug, Clone, Default)]
struct PersistentList {
    key: Vec<(i64, u32)>,
    next0: Vec<u32>,
    mods: Vec<[(u32, u32); 2]>,
    nmods: Vec<u8>,
    heads: Vec<(u32, u32)>,
    time: u32,
}

/// Build-time companion holding the live version in a search tree.
#[derive(Debug, Default)]
struct ListBuilder {
    list: PersistentList,
    live: BTreeMap<(i64, u32), u32>,
}

impl PersistentList {
    fn alloc(&mut self, key: (i64, u32), next: u32) -> u32 {
        self.key.push(key);
        self.next0.push(next);
        self.mods.push([(0, NIL); 2]);
        self.nmods.push(0);
        (self.key.len() - 1) as u32
    }

    #[inline]
    fn next_at(&self, node: u32, version: u32) -> u32 {
        let i = node as usize;
        let mods = &self.mods[i];
        for j in (0..self.nmods[i] as usize).rev() {
            if mods[j].0 <= version {
                return mods[j].1;
            }
        }
        self.next0[i]
    }

    fn head_at(&self, version: u32) -> u32 {
        let idx = self.heads.partition_point(|&(t, _)| t <= version);
        if idx == 0 { NIL } else { self.heads[idx - 1].1 }
    }
}

impl ListBuilder {
    fn set_head(&mut self, node: u32) {
        let t = self.list.time;
        match self.list.heads.last_mut() {
            Some(last) if last.0 == t => last.1 = node,
            _ => self.list.heads.push((t, node)),
        }
    }

    /// Points the successor link of the live node with `key` (or the head
    /// when `key` is `None`) at `target`, copying nodes as needed.
    fn relink(&mut self, mut key: Option<(i64, u32)>, mut target: u32) {
        let t = self.list.time;
        loop {
            let Some(k) = key else {
                self.set_head(target);
                return;
            };
            let x = self.live[&k];
            let i = x as usize;
            let used = self.list.nmods[i] as usize;
            if used < 2 {
                self.list.mods[i][used] = (t, target);
                self.list.nmods[i] += 1;
                return;
            }
            let copy = self.list.alloc(k, target);
            self.live.insert(k, copy);
            key = self.live.range(..k).next_back().map(|(&k, _)| k);
            target = copy;
        }
    }

    fn insert(&mut self, key: (i64, u32)) {
        self.list.time += 1;
        let succ = self.live.range(key..).next().map_or(NIL, |(_, &n)| n);
        let node = self.list.alloc(key, succ);
        let pred = self.live.range(..key).next_back().map(|(&k, _)| k);
        self.live.insert(key, node);
        self.relink(pred, node);
    }

    fn remove(&mut self, key: (i64, u32)) {
        self.list.time += 1;
        let succ = self.live.range((Excluded(key), Unbounded)).next().map_or(NIL, |(_, &n)| n);
        self.live.remove(&key);
        let pred = self.live.range(..key).next_back().map(|(&k, _)| k);
        self.relink(pred, succ);
    }

    /// First live node with key at least `key`.
    fn lower_bound(&self, key: (i64, u32)) -> u32 {
        self.live.range(key..).next().map_or(NIL, |(_, &n)| n)
    }
}

/// Reports horizontal segments hit by an upward vertical ray.
///
/// A ray from `(x, y)` hits segment `s` when `s.x1_lo < x < s.x1_hi` and
/// `s.x2 >= y`. Rays registered at build time keep a pointer to their first
/// hit, so reporting costs `O(1 + k)`; other rays pay a binary search.
#[derive(Debug, Clone)]
pub struct SegRayIndex {
    segs: Vec<HSegment>,
    asc: PersistentList,
    /// Descending by `x2`; ties by decreasing id so that reversal matches `asc`.
    desc: PersistentList,
    /// Per event coordinate: versions after removals and after insertions.
    stops: Vec<(i64, [u32; 2], [u32; 2])>,
    registered: HashMap<(i64, i64), (u32, u32)>,
}

impl SegRayIndex {
    pub fn new(segments: Vec<HSegment>, queries: &[(i64, i64)]) -> Result<Self> {
        for s in &segments {
            if s.x1_lo >= s.x1_hi {
                return Err(Error::MalformedRect { lo: s.x1_lo, hi: s.x1_hi });
            }
        }
        #[derive(PartialEq, Eq, PartialOrd, Ord)]
        enum Ev {
            Remove(u32),
            Query(usize),
            Insert(u32),
        }
        let mut events: Vec<(i64, Ev)> = Vec::with_capacity(2 * segments.len() + queries.len());
        for (i, s) in segments.iter().enumerate() {
            events.push((s.x1_lo, Ev::Insert(i as u32)));
            events.push((s.x1_hi, Ev::Remove(i as u32)));
        }
        for (q, &(x, _)) in queries.iter().enumerate() {
            events.push((x, Ev::Query(q)));
        }
        events.sort_unstable();
        let mut asc = ListBuilder::default();
        let mut desc = ListBuilder::default();
        let mut stops: Vec<(i64, [u32; 2], [u32; 2])> = Vec::new();
        let mut registered = HashMap::with_capacity(queries.len());
        let mut idx = 0;
        while idx < events.len() {
            let x = events[idx].0;
            let mut mid_done = false;
            let mut mid = [0; 2];
            while idx < events.len() && events[idx].0 == x {
                let ev = &events[idx].1;
                if !mid_done && !matches!(ev, Ev::Remove(_)) {
                    mid = [asc.list.time, desc.list.time];
                    mid_done = true;
                }
                match *ev {
                    Ev::Remove(s) => {
                        asc.remove((segments[s as usize].x2, s));
                        desc.remove((-segments[s as usize].x2, NIL - s));
                    }
                    Ev::Insert(s) => {
                        asc.insert((segments[s as usize].x2, s));
                        desc.insert((-segments[s as usize].x2, NIL - s));
                    }
                    Ev::Query(q) => {
                        let y = queries[q].1;
                        registered.insert((x, y), (asc.list.time, asc.lower_bound((y, 0))));
                    }
                }
                idx += 1;
            }
            if !mid_done {
                mid = [asc.list.time, desc.list.time];
            }
            stops.push((x, mid, [asc.list.time, desc.list.time]));
        }
        Ok(SegRayIndex { segs: segments, asc: asc.list, desc: desc.list, stops, registered })
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn is_registered(&self, x: i64, y: i64) -> bool {
        self.registered.contains_key(&(x, y))
    }

    /// Lowest segment hit by the registered ray from `(x, y)`.
    pub fn first_hit(&self, x: i64, y: i64) -> Result<Option<HSegment>> {
        let &(_, node) = self.registered.get(&(x, y)).ok_or(Error::Unregistered(x, y))?;
        Ok((node != NIL).then(|| self.segs[self.asc.key[node as usize].1 as usize]))
    }

    /// Segments hit by the registered ray from `(x, y)`, bottom-up.
    pub fn report(&self, x: i64, y: i64, out: &mut Vec<usize>, probes: &mut usize) -> Result<()> {
        self.report_bounded(x, y, i64::MAX, out, probes)
    }

    /// As [`report`](Self::report) but stops above `y_hi` (inclusive bound).
    pub fn report_bounded(&self, x: i64, y: i64, y_hi: i64, out: &mut Vec<usize>, probes: &mut usize) -> Result<()> {
        let &(version, mut node) = self.registered.get(&(x, y)).ok_or(Error::Unregistered(x, y))?;
        loop {
            *probes += 1;
            if node == NIL {
                break;
            }
            let seg = &self.segs[self.asc.key[node as usize].1 as usize];
            if seg.x2 > y_hi {
                break;
            }
            out.push(seg.payload);
            node = self.asc.next_at(node, version);
        }
        Ok(())
    }

    /// Any ray; locates the sweep version by binary search.
    pub fn report_any(&self, x: i64, y: i64, out: &mut Vec<usize>, probes: &mut usize) {
        let i = self.stops.partition_point(|s| s.0 <= x);
        *probes += 1;
        if i == 0 {
            return;
        }
        let (sx, mid, end) = self.stops[i - 1];
        let version = if sx == x { mid[1] } else { end[1] };
        let start = out.len();
        let mut node = self.desc.head_at(version);
        while node != NIL {
            *probes += 1;
            let seg = &self.segs[(NIL - self.desc.key[node as usize].1) as usize];
            if seg.x2 < y {
                break;
            }
            out.push(seg.payload);
            node = self.desc.next_at(node, version);
        }
        out[start..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{dfs_intervals, Orientation, RootedTree};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scan(segs: &[HSegment], x: i64, y: i64) -> Vec<usize> {
        let mut v: Vec<&HSegment> = segs.iter().filter(|s| s.x1_lo < x && x < s.x1_hi && s.x2 >= y).collect();
        v.sort_by_key(|s| (s.x2, s.payload));
        v.iter().map(|s| s.payload).collect()
    }

    #[test]
    fn nested_segments_bottom_up() {
        let segs = vec![HSegment::new(1, 8, 3, 0), HSegment::new(2, 7, 2, 1), HSegment::new(3, 6, 1, 2)];
        let idx = SegRayIndex::new(segs, &[(4, 0)]).unwrap();
        let mut out = Vec::new();
        let mut probes = 0;
        idx.report(4, 0, &mut out, &mut probes).unwrap();
        assert_eq!(out, vec![2, 1, 0]);
        assert!(probes <= 4);
        let mut any = Vec::new();
        idx.report_any(4, 0, &mut any, &mut probes);
        assert_eq!(any, out);
        assert_eq!(idx.first_hit(4, 0).unwrap().map(|s| s.payload), Some(2));
    }

    #[test]
    fn first_hit_sees_empty_rays() {
        let idx = SegRayIndex::new(vec![HSegment::new(1, 3, 5, 0)], &[(2, 6), (2, 5), (4, 0)]).unwrap();
        assert_eq!(idx.first_hit(2, 6).unwrap(), None);
        assert_eq!(idx.first_hit(2, 5).unwrap(), Some(HSegment::new(1, 3, 5, 0)));
        assert_eq!(idx.first_hit(4, 0).unwrap(), None);
        assert!(idx.first_hit(9, 9).is_err());
    }

    #[test]
    fn disjoint_spans() {
        let segs = vec![HSegment::new(1, 3, 5, 0), HSegment::new(4, 6, 5, 1), HSegment::new(7, 9, 5, 2)];
        let idx = SegRayIndex::new(segs, &[(5, 0)]).unwrap();
        let mut out = Vec::new();
        idx.report(5, 0, &mut out, &mut 0).unwrap();
        assert_eq!(out, vec![1]);
        assert_eq!(idx.report(6, 0, &mut out, &mut 0), Err(Error::Unregistered(6, 0)));
    }

    #[test]
    fn malformed_segment() {
        assert!(SegRayIndex::new(vec![HSegment::new(3, 3, 0, 0)], &[]).is_err());
    }

    #[test]
    fn random_tree_segments_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = 100;
            let parent = (0..n).map(|v| (v > 0).then(|| rng.gen_range(0..v))).collect();
            let tree = RootedTree::from_parents(parent, Orientation::Out).unwrap();
            let iv = dfs_intervals(&tree);
            let segs: Vec<HSegment> =
                (0..n).map(|v| HSegment::new(iv.s[v] as i64, iv.t[v] as i64, rng.gen_range(0..20), v)).collect();
            let queries: Vec<(i64, i64)> = (0..n).map(|v| (iv.s[v] as i64, segs[v].x2)).collect();
            let idx = SegRayIndex::new(segs.clone(), &queries).unwrap();
            for &(x, y) in &queries {
                let want = scan(&segs, x, y);
                let mut got = Vec::new();
                let mut probes = 0;
                idx.report(x, y, &mut got, &mut probes).unwrap();
                assert_eq!(got, want);
                assert!(probes <= want.len() + 1);
                let mut any = Vec::new();
                idx.report_any(x, y, &mut any, &mut 0);
                assert_eq!(any, want);
            }
            for _ in 0..50 {
                let (x, y) = (rng.gen_range(0..2 * n as i64 + 2), rng.gen_range(-1..21));
                let mut any = Vec::new();
                idx.report_any(x, y, &mut any, &mut 0);
                assert_eq!(any, scan(&segs, x, y));
            }
        }
    }

    #[test]
    fn bounded_reporting() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let segs: Vec<HSegment> = (0..150)
            .map(|i| {
                let a = rng.gen_range(0..100);
                HSegment::new(a, a + rng.gen_range(1..40), rng.gen_range(0..60), i)
            })
            .collect();
        let queries: Vec<(i64, i64)> = (0..200).map(|_| (rng.gen_range(0..140), rng.gen_range(0..60))).collect();
        let idx = SegRayIndex::new(segs.clone(), &queries).unwrap();
        for &(x, y) in &queries {
            let y_hi = y + 10;
            let want: Vec<usize> = scan(&segs, x, y).into_iter().filter(|&p| segs[p].x2 <= y_hi).collect();
            let mut got = Vec::new();
            let mut probes = 0;
            idx.report_bounded(x, y, y_hi, &mut got, &mut probes).unwrap();
            assert_eq!(got, want);
            assert!(probes <= want.len() + 1);
        }
    }
}
