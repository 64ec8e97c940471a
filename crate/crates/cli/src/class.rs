//! Input classes, class detection, and builder dispatch.

use anyhow::{bail, Result};
use clap::ValueEnum;
use jr_core::index::{
    index_hpd_two_trees, index_pathcover, index_planar_st, index_tree_path, index_two_paths, index_two_trees,
};
use jr_core::{
    build_pathcover, build_tree_path, build_two_paths, build_two_trees, build_unoriented_trees, topological_order,
    Digraph, GraphKind, JRIndex, JoinGraph, Orientation, RootedTree,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    TwoPaths,
    TreePath,
    TwoTrees,
    UnorientedTrees,
    Pathcover,
    PlanarSt,
    HpdTwoTrees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Explicit,
    Index,
}

/// The most specific shape a graph has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Path,
    Rooted(Orientation),
    Unoriented,
    PlanarSt,
    Dag,
    Cyclic,
}

impl Shape {
    pub fn of(g: &Digraph) -> Shape {
        if g.path_ranks().is_ok() {
            Shape::Path
        } else if let Ok(t) = RootedTree::from_digraph(g) {
            Shape::Rooted(t.orientation())
        } else if g.is_undirected_tree() {
            Shape::Unoriented
        } else if g.kind() == GraphKind::PlanarSt && g.embedding().is_some() {
            Shape::PlanarSt
        } else if topological_order(g).is_some() {
            Shape::Dag
        } else {
            Shape::Cyclic
        }
    }

    fn generality(self) -> u8 {
        match self {
            Shape::Path => 0,
            Shape::Rooted(_) => 1,
            Shape::Unoriented => 2,
            Shape::PlanarSt => 3,
            Shape::Dag => 4,
            Shape::Cyclic => 5,
        }
    }
}

/// Puts the more general graph first. Join reachability is symmetric in the
/// two graphs, so the swap never changes an answer.
pub fn order_pair<'a>(g1: &'a Digraph, g2: &'a Digraph) -> (&'a Digraph, &'a Digraph) {
    let (s1, s2) = (Shape::of(g1), Shape::of(g2));
    let swap = match (s1, s2) {
        (Shape::Rooted(Orientation::In), Shape::Rooted(Orientation::Out)) => true,
        _ => s2.generality() > s1.generality(),
    };
    if swap {
        (g2, g1)
    } else {
        (g1, g2)
    }
}

/// Every class of `mode` that fits the ordered pair most specifically.
pub fn candidates(mode: Mode, g1: &Digraph, g2: &Digraph) -> Vec<Class> {
    use Shape::*;
    let (g1, g2) = order_pair(g1, g2);
    match (mode, Shape::of(g1), Shape::of(g2)) {
        (_, Cyclic, _) | (_, _, Cyclic) => vec![],
        (_, Path, Path) => vec![Class::TwoPaths],
        (Mode::Explicit, Rooted(_), Path) => vec![Class::TreePath],
        (Mode::Explicit, Rooted(_), Rooted(_)) => vec![Class::TwoTrees],
        (Mode::Explicit, Unoriented, _) => vec![Class::UnorientedTrees],
        (Mode::Index, Rooted(_) | Unoriented, Path) => vec![Class::TreePath],
        (Mode::Index, Rooted(Orientation::Out), Rooted(_)) => vec![Class::TwoTrees, Class::HpdTwoTrees],
        (Mode::Index, Rooted(_) | Unoriented, _) => vec![Class::TwoTrees],
        (Mode::Index, PlanarSt, Path) => vec![Class::PlanarSt],
        _ => vec![Class::Pathcover],
    }
}

pub fn resolve(mode: Mode, class: Option<Class>, g1: &Digraph, g2: &Digraph) -> Result<Class> {
    if let Some(c) = class {
        return Ok(c);
    }
    let found = candidates(mode, g1, g2);
    match found.as_slice() {
        [c] => Ok(*c),
        [] => bail!("no supported class fits these graphs"),
        many => {
            let names: Vec<String> = many.iter().map(|c| name(*c)).collect();
            bail!("class is ambiguous ({}); pass --class", names.join(", "))
        }
    }
}

pub fn name(c: Class) -> String {
    c.to_possible_value().expect("no skipped variants").get_name().to_string()
}

pub fn build_explicit(class: Class, g1: &Digraph, g2: &Digraph) -> Result<JoinGraph> {
    let (g1, g2) = order_pair(g1, g2);
    Ok(match class {
        Class::TwoPaths => build_two_paths(g1, g2)?,
        Class::TreePath => build_tree_path(g1, g2)?,
        Class::TwoTrees => build_two_trees(g1, g2)?,
        Class::UnorientedTrees => build_unoriented_trees(g1, g2)?,
        Class::Pathcover => build_pathcover(g1, g2)?,
        Class::PlanarSt | Class::HpdTwoTrees => bail!("class {} has no explicit construction", name(class)),
    })
}

pub fn build_index(class: Class, g1: &Digraph, g2: &Digraph) -> Result<JRIndex> {
    let (g1, g2) = order_pair(g1, g2);
    Ok(match class {
        Class::TwoPaths => index_two_paths(g1, g2)?,
        Class::TreePath => index_tree_path(g1, g2)?,
        Class::TwoTrees | Class::UnorientedTrees => index_two_trees(g1, g2)?,
        Class::Pathcover => index_pathcover(g1, g2)?,
        Class::PlanarSt => index_planar_st(g1, g2)?,
        Class::HpdTwoTrees => index_hpd_two_trees(g1, g2)?,
    })
}
