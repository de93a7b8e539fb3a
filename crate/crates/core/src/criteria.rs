//! Optimality criteria of a test set and coverage verification.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::generators::{ppt_requirements, TestSet};
use crate::model::{EdgeId, Priority, SutModel, Topology};
use crate::requirements::{
    prime_idx, walks_idx, Intensity, PriorityLevel, RequirementError, RequirementPath,
    DEFAULT_PRIME_CAP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CriteriaError {
    #[error("test set is empty; ratio criteria are undefined")]
    EmptyTestSet,
    #[error("test path `{0}` is not a start-to-end walk of the model")]
    InvalidPath(String),
    #[error("nodes `{0}` and `{1}` are joined by parallel edges")]
    AmbiguousEdge(String, String),
    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),
    #[error(transparent)]
    Requirements(#[from] RequirementError),
}

/// The fourteen optimality criteria of one test set. Ratios are fractions
/// in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaVector {
    pub t_count: usize,
    pub edges_total: usize,
    pub edges_high: usize,
    /// Edges of priority high or medium, with repetition.
    pub edges_med: usize,
    pub uedges: usize,
    pub uedges_high: usize,
    /// Unique edges of priority high or medium.
    pub uedges_med: usize,
    pub nodes_total: usize,
    pub unodes: usize,
    pub er: f64,
    pub e_h: f64,
    pub e_m: f64,
    pub ue_h: f64,
    pub ue_m: f64,
}

impl CriteriaVector {
    pub fn get(&self, c: Criterion) -> f64 {
        match c {
            Criterion::TCount => self.t_count as f64,
            Criterion::Edges => self.edges_total as f64,
            Criterion::EdgesH => self.edges_high as f64,
            Criterion::EdgesM => self.edges_med as f64,
            Criterion::Uedges => self.uedges as f64,
            Criterion::UedgesH => self.uedges_high as f64,
            Criterion::UedgesM => self.uedges_med as f64,
            Criterion::Nodes => self.nodes_total as f64,
            Criterion::Unodes => self.unodes as f64,
            Criterion::Er => self.er,
            Criterion::EH => self.e_h,
            Criterion::EM => self.e_m,
            Criterion::UeH => self.ue_h,
            Criterion::UeM => self.ue_m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// One of the fourteen optimality criteria, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    TCount,
    Edges,
    EdgesH,
    EdgesM,
    Uedges,
    UedgesH,
    UedgesM,
    Nodes,
    Unodes,
    Er,
    EH,
    EM,
    UeH,
    UeM,
}

impl Criterion {
    pub const ALL: [Criterion; 14] = [
        Criterion::TCount,
        Criterion::Edges,
        Criterion::EdgesH,
        Criterion::EdgesM,
        Criterion::Uedges,
        Criterion::UedgesH,
        Criterion::UedgesM,
        Criterion::Nodes,
        Criterion::Unodes,
        Criterion::Er,
        Criterion::EH,
        Criterion::EM,
        Criterion::UeH,
        Criterion::UeM,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Criterion::TCount => "tcount",
            Criterion::Edges => "edges",
            Criterion::EdgesH => "edges_h",
            Criterion::EdgesM => "edges_m",
            Criterion::Uedges => "uedges",
            Criterion::UedgesH => "uedges_h",
            Criterion::UedgesM => "uedges_m",
            Criterion::Nodes => "nodes",
            Criterion::Unodes => "unodes",
            Criterion::Er => "er",
            Criterion::EH => "e_h",
            Criterion::EM => "e_m",
            Criterion::UeH => "ue_h",
            Criterion::UeM => "ue_m",
        }
    }

    /// Counts and `er` are better when lower; the priority ratios when higher.
    pub fn direction(self) -> Direction {
        match self {
            Criterion::EH | Criterion::EM | Criterion::UeH | Criterion::UeM => Direction::Maximize,
            _ => Direction::Minimize,
        }
    }

    pub fn is_ratio(self) -> bool {
        matches!(
            self,
            Criterion::Er | Criterion::EH | Criterion::EM | Criterion::UeH | Criterion::UeM
        )
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = CriteriaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CriteriaError::UnknownCriterion(s.to_string()))
    }
}

/// Computes the criteria vector of `ts` against `m`.
pub fn compute_criteria(m: &SutModel, ts: &TestSet) -> Result<CriteriaVector, CriteriaError> {
    if ts.is_empty() {
        return Err(CriteriaError::EmptyTestSet);
    }
    let topo = Topology::new(m);
    let mut v = CriteriaVector {
        t_count: ts.len(),
        edges_total: 0,
        edges_high: 0,
        edges_med: 0,
        uedges: 0,
        uedges_high: 0,
        uedges_med: 0,
        nodes_total: 0,
        unodes: 0,
        er: 0.0,
        e_h: 0.0,
        e_m: 0.0,
        ue_h: 0.0,
        ue_m: 0.0,
    };
    let mut seen_edges: HashSet<usize> = HashSet::new();
    let mut seen_nodes: HashSet<usize> = HashSet::new();
    for path in ts.paths() {
        let idx = topo
            .index_path(path.nodes())
            .filter(|p| p[0] == topo.start && topo.is_end[*p.last().expect("non-empty")])
            .ok_or_else(|| CriteriaError::InvalidPath(path.to_string()))?;
        v.nodes_total += idx.len();
        seen_nodes.extend(idx.iter().copied());
        for w in idx.windows(2) {
            let e = match topo.edges_at(w[0], w[1]) {
                [e] => *e,
                _ => {
                    return Err(CriteriaError::AmbiguousEdge(
                        topo.nodes[w[0]].to_string(),
                        topo.nodes[w[1]].to_string(),
                    ))
                }
            };
            let p = topo.edges[e].priority;
            v.edges_total += 1;
            v.edges_high += usize::from(p == Priority::High);
            v.edges_med += usize::from(p != Priority::Low);
            if seen_edges.insert(e) {
                v.uedges += 1;
                v.uedges_high += usize::from(p == Priority::High);
                v.uedges_med += usize::from(p != Priority::Low);
            }
        }
    }
    v.unodes = seen_nodes.len();
    let total = v.edges_total as f64;
    v.er = v.uedges as f64 / topo.edges.len() as f64;
    v.e_h = v.edges_high as f64 / total;
    v.e_m = v.edges_med as f64 / total;
    // unique counts over all edges of T, as the criteria are defined
    v.ue_h = v.uedges_high as f64 / total;
    v.ue_m = v.uedges_med as f64 / total;
    Ok(v)
}

/// What a test set has to contain: a set of edges, or a set of paths each
/// occurring as a contiguous sub-path.
#[derive(Debug, Clone, PartialEq)]
pub enum Obligations {
    Edges(Vec<EdgeId>),
    Paths(Vec<RequirementPath>),
}

impl Obligations {
    pub fn len(&self) -> usize {
        match self {
            Obligations::Edges(e) => e.len(),
            Obligations::Paths(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Missing {
    Edge(EdgeId),
    Path(RequirementPath),
}

impl fmt::Display for Missing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Missing::Edge(e) => write!(f, "edge {e}"),
            Missing::Path(p) => write!(f, "path {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageVerdict {
    pub satisfied: bool,
    pub missing: Vec<Missing>,
}

/// Priority edges selected by `pl`, or every edge for `PriorityLevel::None`.
pub fn priority_edges(m: &SutModel, pl: PriorityLevel) -> Vec<EdgeId> {
    let mut ids: Vec<EdgeId> = m
        .edges()
        .iter()
        .filter(|e| pl.selects(e.priority))
        .map(|e| e.id.clone())
        .collect();
    ids.sort();
    ids
}

/// Reference obligations for a coverage level.
///
/// Edge Coverage asks for every edge, or only the priority edges under a
/// priority level. Edge-Pair and TDL ask for every walk of that length, or
/// under a priority level only the walks that contain a priority edge.
/// Prime Path Coverage asks for every prime path, or under a priority level
/// the priority edges (the only reduction available for it).
pub fn obligations(
    m: &SutModel,
    intensity: Intensity,
    pl: PriorityLevel,
) -> Result<Obligations, CriteriaError> {
    obligations_with_cap(m, intensity, pl, DEFAULT_PRIME_CAP)
}

pub fn obligations_with_cap(
    m: &SutModel,
    intensity: Intensity,
    pl: PriorityLevel,
    prime_cap: usize,
) -> Result<Obligations, CriteriaError> {
    let topo = Topology::new(m);
    let to_paths = |paths: Vec<Vec<usize>>| {
        let mut out: Vec<RequirementPath> = paths
            .iter()
            .map(|p| RequirementPath::from_trusted(topo.id_path(p)))
            .collect();
        out.sort();
        out.dedup();
        Obligations::Paths(out)
    };
    Ok(match (intensity, pl) {
        (Intensity::Edge, _) => Obligations::Edges(priority_edges(m, pl)),
        (Intensity::EdgePair | Intensity::Tdl(_), PriorityLevel::None) => {
            to_paths(walks_idx(&topo, intensity.depth().expect("walk intensity")))
        }
        (Intensity::EdgePair | Intensity::Tdl(_), level) => to_paths(ppt_requirements(
            &topo,
            intensity.depth().expect("walk intensity"),
            level,
        )),
        (Intensity::PrimePath, PriorityLevel::None) => to_paths(prime_idx(&topo, prime_cap)?),
        (Intensity::PrimePath, level) => Obligations::Edges(priority_edges(m, level)),
    })
}

/// Checks `ts` against explicit obligations and lists every miss.
pub fn verify_obligations(
    m: &SutModel,
    ts: &TestSet,
    obligations: &Obligations,
) -> CoverageVerdict {
    let missing: Vec<Missing> = match obligations {
        Obligations::Edges(ids) => {
            let mut present: HashSet<&EdgeId> = HashSet::new();
            for e in m.edges() {
                let pair = [e.source.clone(), e.target.clone()];
                if ts.paths().iter().any(|p| p.contains(&pair)) {
                    present.insert(&e.id);
                }
            }
            ids.iter()
                .filter(|id| !present.contains(id))
                .map(|id| Missing::Edge(id.clone()))
                .collect()
        }
        Obligations::Paths(paths) => paths
            .iter()
            .filter(|r| !ts.paths().iter().any(|p| p.contains(r.nodes())))
            .map(|r| Missing::Path(r.clone()))
            .collect(),
    };
    CoverageVerdict {
        satisfied: missing.is_empty(),
        missing,
    }
}

/// Verifies a test set against the reference obligations of a coverage level.
pub fn verify_coverage(
    m: &SutModel,
    ts: &TestSet,
    intensity: Intensity,
    pl: PriorityLevel,
) -> Result<CoverageVerdict, CriteriaError> {
    Ok(verify_obligations(m, ts, &obligations(m, intensity, pl)?))
}
