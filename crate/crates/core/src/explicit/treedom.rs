//! Tree dominance: `a` reaches `b` iff `a` is an ancestor (out-trees) or a
//! descendant (in-trees) of `b` in a reference tree and `y(a) <= y(b)`.
//! Two-tree dominance adds a third coordinate handled by an outer recursion.

use super::{role_order, JoinBuilder, SteinerKind};
use crate::graph::{Orientation, PartRole};

#[derive(Debug, Clone, Copy)]
pub(crate) struct TreeItem {
    pub node: usize,
    pub role: PartRole,
    /// DFS interval in the reference tree.
    pub s: usize,
    pub t: usize,
    pub y: i64,
}

/// Item for two-tree dominance: reference-tree interval plus two linear
/// coordinates that must both be dominated.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TwoTreeItem {
    pub node: usize,
    pub role: PartRole,
    pub s: usize,
    pub t: usize,
    pub y2: i64,
    pub y3: i64,
}

fn sort_by_coord<T: Copy>(items: &mut [T], key: impl Fn(&T) -> (i64, PartRole, usize)) {
    items.sort_by_key(|it| {
        let (c, r, n) = key(it);
        (c, role_order(r), n)
    });
}

pub(crate) fn build_tree_dom(b: &mut JoinBuilder, items: &[TreeItem], orient: Orientation, level: u32) {
    let mut sorted = items.to_vec();
    sort_by_coord(&mut sorted, |it| (it.y, it.role, it.node));
    recurse(b, &sorted, orient, level, 0);
}

fn recurse(b: &mut JoinBuilder, items: &[TreeItem], orient: Orientation, level: u32, sub: u32) {
    let m = items.len();
    if m <= 1 {
        return;
    }
    let (low, high) = items.split_at(m.div_ceil(2));
    wire(b, low, high, orient, level, sub);
    recurse(b, low, orient, level, sub + 1);
    recurse(b, high, orient, level, sub + 1);
}

/// Connects sources of `low` to targets of `high` that are related in the
/// reference tree.
fn wire(b: &mut JoinBuilder, low: &[TreeItem], high: &[TreeItem], orient: Orientation, level: u32, sub: u32) {
    let split = high[0].y;
    // (item, is_low)
    let mut sweep: Vec<(&TreeItem, bool)> = low
        .iter()
        .filter(|it| it.role.is_source())
        .map(|it| (it, true))
        .chain(high.iter().filter(|it| it.role.is_target()).map(|it| (it, false)))
        .collect();
    if !sweep.iter().any(|x| x.1) || sweep.iter().all(|x| x.1) {
        return;
    }
    sweep.sort_by_key(|(it, _)| it.s);
    // Stack of (t, steiner id) for the marked side, innermost on top.
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for (it, is_low) in sweep {
        while stack.last().is_some_and(|&(t, _)| t < it.s) {
            stack.pop();
        }
        let top = stack.last().map(|&(_, id)| id);
        match orient {
            Orientation::Out => {
                if is_low {
                    let id = b.steiner(SteinerKind::TreeOut, level, sub, split, it.node);
                    b.arc(it.node, id);
                    if let Some(z) = top {
                        b.arc(z, id);
                    }
                    stack.push((it.t, id));
                } else if let Some(u) = top {
                    b.arc(u, it.node);
                }
            }
            Orientation::In => {
                if !is_low {
                    let id = b.steiner(SteinerKind::TreeIn, level, sub, split, it.node);
                    b.arc(id, it.node);
                    if let Some(z) = top {
                        b.arc(id, z);
                    }
                    stack.push((it.t, id));
                } else if let Some(w) = top {
                    b.arc(it.node, w);
                }
            }
        }
    }
}

pub(crate) fn build_two_tree_dom(b: &mut JoinBuilder, items: &[TwoTreeItem], orient: Orientation) {
    let mut sorted = items.to_vec();
    sort_by_coord(&mut sorted, |it| (it.y3, it.role, it.node));
    outer(b, &sorted, orient, 0);
}

fn outer(b: &mut JoinBuilder, items: &[TwoTreeItem], orient: Orientation, level: u32) {
    let m = items.len();
    if m <= 1 {
        return;
    }
    let (low, high) = items.split_at(m.div_ceil(2));
    let restricted: Vec<TreeItem> = low
        .iter()
        .filter_map(|it| Some((it, it.role.meet(PartRole::Source)?)))
        .chain(high.iter().filter_map(|it| Some((it, it.role.meet(PartRole::Target)?))))
        .map(|(it, role)| TreeItem { node: it.node, role, s: it.s, t: it.t, y: it.y2 })
        .collect();
    build_tree_dom(b, &restricted, orient, level);
    outer(b, low, orient, level + 1);
    outer(b, high, orient, level + 1);
}
