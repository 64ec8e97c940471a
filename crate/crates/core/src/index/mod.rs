//! Implicit join-reachability indexes: report every `a` that reaches a query
//! vertex `b` in both input graphs.
//!
//! Every variant is a list of geometric structures plus, for each vertex, a
//! precomputed plan of the probes to run against them. Probe plans of the
//! output-sensitive structures keep only probes known to report something.

mod build;
mod kameda;


use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{CartesianTree, Dominance3D, EnclosureIndex, RangeTree2D, SegRayIndex};
use crate::hpd::HpdTwoTrees;

pub use build::{
    index_hpd_two_trees, index_pathcover, index_planar_st, index_tree_path, index_two_paths, index_two_trees,
};
pub use kameda::{kameda_labels, KamedaLabels, KAMEDA_EXHAUSTIVE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexVariant {
    TwoPaths,
    TreePath,
    TwoTrees,
    HpdTwoTrees,
    Pathcover,
    PlanarSt,
}

impl IndexVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexVariant::TwoPaths => "two-paths",
            IndexVariant::TreePath => "tree-path",
            IndexVariant::TwoTrees => "two-trees",
            IndexVariant::HpdTwoTrees => "hpd-two-trees",
            IndexVariant::Pathcover => "pathcover",
            IndexVariant::PlanarSt => "planar-st",
        }
    }
}

impl fmt::Display for IndexVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
enum Structure {
    /// Points reported by two-sided dominance.
    Dom(CartesianTree),
    /// Points reported by a grounded range `[lo, hi] × (-inf, y]`.
    Grounded(CartesianTree),
    Ray(SegRayIndex),
    Enclosure(EnclosureIndex),
    Range(RangeTree2D),
    Dom3(Dominance3D),
    Hpd(HpdTwoTrees),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Probe {
    Dom { x: i64, y: i64 },
    Grounded { lo: i64, hi: i64, y: i64 },
    Ray { x: i64, y: i64, y_hi: i64 },
    Corner { q1: i64, q2: i64 },
    Rect { x1: (i64, i64), x2: (i64, i64) },
    Dom3([i64; 3]),
    Hpd(usize),
}

/// Result of a query together with its instrumentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryTrace {
    /// Sorted, duplicate-free answer.
    pub result: Vec<usize>,
    /// Structure nodes visited, summed over all probes.
    pub probes: usize,
    /// Structures probed, in plan order.
    pub structures: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct JRIndex {
    variant: IndexVariant,
    n: usize,
    structures: Vec<Structure>,
    plans: Vec<Vec<(u32, Probe)>>,
    /// Part or path group each structure was built for.
    origins: Vec<(usize, usize)>,
    labels: Option<KamedaLabels>,
}

impl JRIndex {
    pub(crate) fn new(variant: IndexVariant, n: usize) -> Self {
        JRIndex { variant, n, structures: Vec::new(), plans: vec![Vec::new(); n], origins: Vec::new(), labels: None }
    }

    fn add(&mut self, s: Structure, origin: (usize, usize)) -> u32 {
        self.structures.push(s);
        self.origins.push(origin);
        (self.structures.len() - 1) as u32
    }

    fn plan(&mut self, v: usize, sid: u32, p: Probe) {
        self.plans[v].push((sid, p));
    }

    pub fn variant(&self) -> IndexVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn structure_count(&self) -> usize {
        self.structures.len()
    }

    /// The part/path pair a structure was built for.
    pub fn structure_origin(&self, sid: usize) -> (usize, usize) {
        self.origins[sid]
    }

    /// Number of probes planned for `b`.
    pub fn plan_len(&self, b: usize) -> usize {
        self.plans[b].len()
    }

    pub fn labels(&self) -> Option<&KamedaLabels> {
        self.labels.as_ref()
    }

    /// Every `a` reaching `b` in both graphs, ascending; includes `b`.
    pub fn query(&self, b: usize) -> Result<Vec<usize>> {
        self.query_traced(b).map(|t| t.result)
    }

    pub fn query_traced(&self, b: usize) -> Result<QueryTrace> {
        if b >= self.n {
            return Err(Error::VertexOutOfRange { vertex: b, n: self.n });
        }
        let mut out = Vec::new();
        let mut probes = 0;
        let mut structures = Vec::with_capacity(self.plans[b].len());
        for &(sid, probe) in &self.plans[b] {
            structures.push(sid as usize);
            run(&self.structures[sid as usize], probe, &mut out, &mut probes);
        }
        out.push(b);
        out.sort_unstable();
        out.dedup();
        Ok(QueryTrace { result: out, probes, structures })
    }
}

fn run(s: &Structure, probe: Probe, out: &mut Vec<usize>, probes: &mut usize) {
    match (s, probe) {
        (Structure::Dom(ct), Probe::Dom { x, y }) => match ct.position_upto(x) {
            Some(hi) => ct.report_prefix(hi, y, out, probes),
            None => *probes += 1,
        },
        (Structure::Grounded(ct), Probe::Grounded { lo, hi, y }) => match ct.positions_within(lo, hi) {
            Some((a, b)) => ct.report_range(a, b, y, out, probes),
            None => *probes += 1,
        },
        (Structure::Ray(idx), Probe::Ray { x, y, y_hi }) => {
            idx.report_bounded(x, y, y_hi, out, probes).expect("planned rays are registered")
        }
        (Structure::Enclosure(idx), Probe::Corner { q1, q2 }) => idx.report(q1, q2, out, probes),
        (Structure::Range(rt), Probe::Rect { x1, x2 }) => {
            rt.report(x1, x2, out, probes).expect("planned rectangles are well formed")
        }
        (Structure::Dom3(d), Probe::Dom3(q)) => d.report(q, out, probes),
        (Structure::Hpd(h), Probe::Hpd(b)) => h.report(b, out, probes),
        _ => unreachable!("probe planned against a structure of another kind"),
    }
}
