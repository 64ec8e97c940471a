//! Planar dominance: `a` reaches `b` iff `x1(a) <= x1(b)` and `x2(a) <= x2(b)`.

use super::{role_order, JoinBuilder, SteinerKind};
use crate::graph::PartRole;

/// A point standing for join vertex `node`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DomItem {
    pub node: usize,
    pub role: PartRole,
    pub x1: i64,
    pub x2: i64,
}

#[derive(Clone, Copy)]
struct Ranked {
    node: usize,
    role: PartRole,
    raw1: i64,
    r1: usize,
    r2: usize,
}

/// Wires every source item to every dominating target item through
/// Steiner vertices, recursing on the median of the first coordinate.
pub(crate) fn build_dom2(b: &mut JoinBuilder, items: &[DomItem]) {
    if items.len() <= 1 {
        return;
    }
    let rank = |key: &dyn Fn(&DomItem) -> i64| {
        let mut idx: Vec<usize> = (0..items.len()).collect();
        idx.sort_by_key(|&i| (key(&items[i]), role_order(items[i].role), items[i].node));
        let mut r = vec![0; items.len()];
        for (k, &i) in idx.iter().enumerate() {
            r[i] = k;
        }
        r
    };
    let r1 = rank(&|it| it.x1);
    let r2 = rank(&|it| it.x2);
    let mut ranked: Vec<Ranked> = items
        .iter()
        .enumerate()
        .map(|(i, it)| Ranked { node: it.node, role: it.role, raw1: it.x1, r1: r1[i], r2: r2[i] })
        .collect();
    ranked.sort_by_key(|it| it.r1);
    recurse(b, &ranked, 0);
}

fn recurse(b: &mut JoinBuilder, items: &[Ranked], level: u32) {
    let m = items.len();
    if m <= 1 {
        return;
    }
    let (left, right) = items.split_at(m.div_ceil(2));
    if let Some(min_src) = left.iter().filter(|it| it.role.is_source()).map(|it| it.r2).min() {
        let mut targets: Vec<&Ranked> =
            right.iter().filter(|it| it.role.is_target() && it.r2 >= min_src).collect();
        targets.sort_by_key(|it| it.r2);
        if !targets.is_empty() {
            let split = right[0].raw1;
            let ids: Vec<usize> = targets
                .iter()
                .map(|t| {
                    let s = b.steiner(SteinerKind::Dom2, level, 0, split, t.node);
                    b.arc(s, t.node);
                    s
                })
                .collect();
            for w in ids.windows(2) {
                b.arc(w[0], w[1]);
            }
            for a in left.iter().filter(|it| it.role.is_source()) {
                let k = targets.partition_point(|t| t.r2 < a.r2);
                if k < ids.len() {
                    b.arc(a.node, ids[k]);
                }
            }
        }
    }
    recurse(b, left, level + 1);
    recurse(b, right, level + 1);
}
