//! Join reachability: explicit join graphs and query indexes for pairs of
//! digraphs from restricted classes (paths, trees, DAGs via path covers and
//! planar st-graphs).

pub mod cover;
pub mod error;
pub mod explicit;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod hpd;
pub mod index;
pub mod minimal;

pub use cover::{from_ranks, greedy_path_cover, min_path_cover, FromRanks, PathCover};
pub use error::{Error, Result};
pub use explicit::{
    build_pathcover, build_tree_path, build_two_paths, build_two_trees, build_unoriented_trees, gen_bitreversal,
    verify_join_graph, JoinGraph, JoinReport, SteinerTag,
};
pub use gen::{generate, InstanceKind, InstanceSpec};
pub use graph::*;
pub use index::{JRIndex, IndexVariant, KamedaLabels, QueryTrace};
pub use minimal::{and_closure, minimal_restricted_join, transitive_reduction};
