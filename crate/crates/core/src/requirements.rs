//! Test requirements: node paths that must appear as contiguous sub-paths of
//! some test case, built per coverage level.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{NodeId, PlainGraph, Priority, SutModel, Topology};

/// Default upper bound on the number of simple paths enumerated while
/// searching for prime paths.
pub const DEFAULT_PRIME_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RequirementError {
    #[error("invalid coverage combination: {0}")]
    InvalidCombination(String),
    #[error("prime path enumeration exceeded the cap of {0} paths")]
    PrimeCapExceeded(usize),
    #[error("TDL must be greater than 2 here, got {0}")]
    InvalidTdl(usize),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// Coverage intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intensity {
    /// TDL = 1.
    Edge,
    /// TDL = 2.
    EdgePair,
    /// TDL = x with x > 2.
    Tdl(usize),
    PrimePath,
}

impl Intensity {
    pub fn tdl(x: usize) -> Result<Self, RequirementError> {
        if x > 2 {
            Ok(Intensity::Tdl(x))
        } else {
            Err(RequirementError::InvalidTdl(x))
        }
    }

    /// Walk length in edges for the TDL-style intensities.
    pub fn depth(self) -> Option<usize> {
        match self {
            Intensity::Edge => Some(1),
            Intensity::EdgePair => Some(2),
            Intensity::Tdl(x) => Some(x),
            Intensity::PrimePath => None,
        }
    }
}

impl fmt::Display for Intensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intensity::Edge => f.write_str("edge"),
            Intensity::EdgePair => f.write_str("edge-pair"),
            Intensity::Tdl(x) => write!(f, "tdl:{x}"),
            Intensity::PrimePath => f.write_str("prime-path"),
        }
    }
}

impl FromStr for Intensity {
    type Err = RequirementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge" => Ok(Intensity::Edge),
            "edge-pair" => Ok(Intensity::EdgePair),
            "prime-path" => Ok(Intensity::PrimePath),
            _ => match s.strip_prefix("tdl:").map(str::parse::<usize>) {
                Some(Ok(x)) => Intensity::tdl(x),
                _ => Err(RequirementError::Parse(s.to_string())),
            },
        }
    }
}

/// Priority level restricting coverage obligations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PriorityLevel {
    High,
    Medium,
    None,
}

impl PriorityLevel {
    /// Whether an edge of the given priority belongs to the obligation set.
    /// `None` selects every edge.
    pub fn selects(self, p: Priority) -> bool {
        match self {
            PriorityLevel::High => p == Priority::High,
            PriorityLevel::Medium => p != Priority::Low,
            PriorityLevel::None => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PriorityLevel::High => "high",
            PriorityLevel::Medium => "medium",
            PriorityLevel::None => "none",
        }
    }
}

impl fmt::Display for PriorityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PriorityLevel {
    type Err = RequirementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high" => Ok(PriorityLevel::High),
            "medium" => Ok(PriorityLevel::Medium),
            "none" => Ok(PriorityLevel::None),
            other => Err(RequirementError::Parse(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverageSpec {
    pub intensity: Intensity,
    pub pl: PriorityLevel,
}

impl CoverageSpec {
    pub fn new(intensity: Intensity, pl: PriorityLevel) -> Self {
        Self { intensity, pl }
    }
}

impl fmt::Display for CoverageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+pl={}", self.intensity, self.pl)
    }
}

/// How edge priorities are turned into requirements for Edge Coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conversion {
    Atomic,
    Sequence,
    NotApplicable,
}

impl Conversion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conversion::Atomic => "atomic",
            Conversion::Sequence => "sequence",
            Conversion::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Conversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A path of at least one edge that a test case has to contain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RequirementPath {
    nodes: Vec<NodeId>,
}

impl RequirementPath {
    /// Builds a requirement, checking length and edge adjacency in `m`.
    pub fn new(m: &SutModel, nodes: Vec<NodeId>) -> Option<Self> {
        let topo = Topology::new(m);
        (nodes.len() >= 2 && topo.index_path(&nodes).is_some()).then_some(Self { nodes })
    }

    pub(crate) fn from_trusted(nodes: Vec<NodeId>) -> Self {
        debug_assert!(nodes.len() >= 2);
        Self { nodes }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }
}

impl fmt::Display for RequirementPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_path(&self.nodes))
    }
}

pub(crate) fn join_path(nodes: &[NodeId]) -> String {
    let parts: Vec<&str> = nodes.iter().map(NodeId::as_str).collect();
    parts.join("->")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementSet {
    pub coverage: CoverageSpec,
    pub conversion: Conversion,
    paths: Vec<RequirementPath>,
}

impl RequirementSet {
    /// Sorts canonically and removes duplicates.
    pub fn new(
        coverage: CoverageSpec,
        conversion: Conversion,
        mut paths: Vec<RequirementPath>,
    ) -> Self {
        paths.sort();
        paths.dedup();
        Self {
            coverage,
            conversion,
            paths,
        }
    }

    fn from_indices(
        topo: &Topology,
        coverage: CoverageSpec,
        conversion: Conversion,
        paths: Vec<Vec<usize>>,
    ) -> Self {
        let paths = paths
            .into_iter()
            .map(|p| RequirementPath::from_trusted(topo.id_path(&p)))
            .collect();
        Self::new(coverage, conversion, paths)
    }

    pub fn paths(&self) -> &[RequirementPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

pub(crate) fn check_pl(pl: PriorityLevel) -> Result<PriorityLevel, RequirementError> {
    match pl {
        PriorityLevel::None => Err(RequirementError::InvalidCombination(
            "priority level must be high or medium".into(),
        )),
        _ => Ok(pl),
    }
}

/// One two-node requirement per edge at the selected priority levels.
pub fn atomic_requirements(
    m: &SutModel,
    pl: PriorityLevel,
) -> Result<RequirementSet, RequirementError> {
    let level = check_pl(pl)?;
    let topo = Topology::new(m);
    let paths = atomic_idx(&topo, level);
    Ok(RequirementSet::from_indices(
        &topo,
        CoverageSpec::new(Intensity::Edge, level),
        Conversion::Atomic,
        paths,
    ))
}

pub(crate) fn atomic_idx(topo: &Topology, level: PriorityLevel) -> Vec<Vec<usize>> {
    topo.edges
        .iter()
        .filter(|e| level.selects(e.priority))
        .map(|e| vec![e.source, e.target])
        .collect()
}

/// Chains of priority edges: the priority subgraph split at every node whose
/// in- or out-degree within that subgraph differs from one. Cycles made only
/// of degree-one nodes are opened at their smallest edge id.
pub fn sequence_requirements(
    m: &SutModel,
    pl: PriorityLevel,
) -> Result<RequirementSet, RequirementError> {
    let level = check_pl(pl)?;
    let topo = Topology::new(m);
    let paths = sequence_idx(&topo, level)
        .into_iter()
        .map(|chain| chain_nodes(&topo, &chain))
        .collect();
    Ok(RequirementSet::from_indices(
        &topo,
        CoverageSpec::new(Intensity::Edge, level),
        Conversion::Sequence,
        paths,
    ))
}

pub(crate) fn chain_nodes(topo: &Topology, chain: &[usize]) -> Vec<usize> {
    let mut nodes = vec![topo.edges[chain[0]].source];
    nodes.extend(chain.iter().map(|&k| topo.edges[k].target));
    nodes
}

/// Chain decomposition as edge-index lists, in discovery order.
pub(crate) fn sequence_idx(topo: &Topology, level: PriorityLevel) -> Vec<Vec<usize>> {
    let n = topo.nodes.len();
    let selected: Vec<bool> = topo
        .edges
        .iter()
        .map(|e| level.selects(e.priority))
        .collect();
    let mut out_sel: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (k, e) in topo.edges.iter().enumerate() {
        if selected[k] {
            out_sel[e.source].push(k);
            indeg[e.target] += 1;
        }
    }
    let through = |v: usize| indeg[v] == 1 && out_sel[v].len() == 1;
    let mut used = vec![false; topo.edges.len()];
    let mut chains = Vec::new();

    let follow = |first: usize, used: &mut Vec<bool>| {
        let mut chain = vec![first];
        used[first] = true;
        let mut v = topo.edges[first].target;
        while through(v) {
            let next = out_sel[v][0];
            if used[next] {
                break;
            }
            used[next] = true;
            chain.push(next);
            v = topo.edges[next].target;
        }
        chain
    };

    for (k, e) in topo.edges.iter().enumerate() {
        if selected[k] && !used[k] && !through(e.source) {
            chains.push(follow(k, &mut used));
        }
    }
    // Remaining selected edges form pure cycles; edges are in id order.
    for k in 0..topo.edges.len() {
        if selected[k] && !used[k] {
            chains.push(follow(k, &mut used));
        }
    }
    chains
}

/// Every pair of adjacent edges as a three-node path. Not influenced by PL.
pub fn edge_pair_requirements(m: &SutModel) -> RequirementSet {
    let topo = Topology::new(m);
    let paths = walks_idx(&topo, 2);
    RequirementSet::from_indices(
        &topo,
        CoverageSpec::new(Intensity::EdgePair, PriorityLevel::None),
        Conversion::NotApplicable,
        paths,
    )
}

/// Every walk of exactly `x` edges (edges may repeat). Not influenced by PL.
pub fn tdl_requirements(m: &SutModel, x: usize) -> Result<RequirementSet, RequirementError> {
    let intensity = Intensity::tdl(x)?;
    let topo = Topology::new(m);
    let paths = walks_idx(&topo, x);
    Ok(RequirementSet::from_indices(
        &topo,
        CoverageSpec::new(intensity, PriorityLevel::None),
        Conversion::NotApplicable,
        paths,
    ))
}

/// All node walks of `len` edges, in lexicographic order.
pub(crate) fn walks_idx(topo: &Topology, len: usize) -> Vec<Vec<usize>> {
    fn extend(topo: &Topology, len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == len + 1 {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("walks start non-empty");
        for &next in &topo.succ[last] {
            path.push(next);
            extend(topo, len, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for start in 0..topo.nodes.len() {
        extend(topo, len, &mut vec![start], &mut out);
    }
    out
}

/// Prime paths of `g` using [`DEFAULT_PRIME_CAP`].
pub fn prime_paths(g: &PlainGraph) -> Result<RequirementSet, RequirementError> {
    prime_paths_with_cap(g, DEFAULT_PRIME_CAP)
}

/// Prime paths: simple paths (only the endpoints may coincide) that are not
/// a proper sub-path of any other simple path.
pub fn prime_paths_with_cap(
    g: &PlainGraph,
    cap: usize,
) -> Result<RequirementSet, RequirementError> {
    let paths = prime_idx(&g.topo, cap)?;
    Ok(RequirementSet::from_indices(
        &g.topo,
        CoverageSpec::new(Intensity::PrimePath, PriorityLevel::None),
        Conversion::NotApplicable,
        paths,
    ))
}

pub(crate) fn prime_idx(topo: &Topology, cap: usize) -> Result<Vec<Vec<usize>>, RequirementError> {
    let n = topo.nodes.len();
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut finals: Vec<Vec<usize>> = Vec::new();
    let mut enumerated = frontier.len();

    // Extend simple paths one edge at a time. A path is final once it closes
    // a cycle or has no extension that keeps it simple.
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for path in frontier {
            let first = path[0];
            let last = *path.last().expect("non-empty path");
            let mut extended = false;
            for &w in &topo.succ[last] {
                if w == first {
                    let mut cycle = path.clone();
                    cycle.push(w);
                    finals.push(cycle);
                    extended = true;
                    enumerated += 1;
                } else if !path.contains(&w) {
                    let mut longer = path.clone();
                    longer.push(w);
                    next.push(longer);
                    extended = true;
                    enumerated += 1;
                }
            }
            if !extended {
                finals.push(path);
            }
            if enumerated > cap {
                return Err(RequirementError::PrimeCapExceeded(cap));
            }
        }
        frontier = next;
    }

    let finals: Vec<Vec<usize>> = finals.into_iter().filter(|p| p.len() >= 2).collect();
    let mut proper_subpaths: HashSet<&[usize]> = HashSet::new();
    for p in &finals {
        for i in 0..p.len() {
            for j in i + 1..=p.len() {
                if j - i < p.len() {
                    proper_subpaths.insert(&p[i..j]);
                }
            }
        }
    }
    let primes: BTreeSet<Vec<usize>> = finals
        .iter()
        .filter(|p| !proper_subpaths.contains(p.as_slice()))
        .cloned()
        .collect();
    Ok(primes.into_iter().collect())
}

/// Builds the requirement set for a coverage row.
///
/// Atomic and sequence conversions apply to Edge Coverage with a priority
/// level and only there. The other intensities ignore PL.
pub fn build_requirements(
    m: &SutModel,
    cov: CoverageSpec,
    conversion: Conversion,
) -> Result<RequirementSet, RequirementError> {
    build_requirements_with_cap(m, cov, conversion, DEFAULT_PRIME_CAP)
}

pub fn build_requirements_with_cap(
    m: &SutModel,
    cov: CoverageSpec,
    conversion: Conversion,
    prime_cap: usize,
) -> Result<RequirementSet, RequirementError> {
    let pl = (cov.pl != PriorityLevel::None).then_some(cov.pl);
    let mismatch = || {
        RequirementError::InvalidCombination(format!(
            "{cov} does not combine with {conversion} conversion"
        ))
    };
    match (cov.intensity, conversion, pl) {
        (Intensity::Edge, Conversion::Atomic, Some(p)) => atomic_requirements(m, p),
        (Intensity::Edge, Conversion::Sequence, Some(p)) => sequence_requirements(m, p),
        (Intensity::Edge, _, _) => Err(mismatch()),
        (_, Conversion::Atomic | Conversion::Sequence, _) => Err(mismatch()),
        (Intensity::EdgePair, Conversion::NotApplicable, _) => Ok(edge_pair_requirements(m)),
        (Intensity::Tdl(x), Conversion::NotApplicable, _) => tdl_requirements(m, x),
        (Intensity::PrimePath, Conversion::NotApplicable, _) => {
            let g = crate::model::to_plain_graph(m)
                .map_err(|e| RequirementError::InvalidCombination(e.to_string()))?;
            prime_paths_with_cap(&g, prime_cap)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{generate_random_model, to_plain_graph, ModelBuilder, RandomModelParams};
    use proptest::prelude::*;

    fn listed(r: &RequirementSet) -> Vec<String> {
        r.paths().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn atomic_examples() {
        assert_eq!(
            listed(&atomic_requirements(&m1(), PriorityLevel::High).unwrap()),
            ["a->t", "s->a"]
        );
        assert_eq!(
            listed(&atomic_requirements(&m1(), PriorityLevel::Medium).unwrap()),
            ["a->t", "b->t", "s->a"]
        );
        assert_eq!(
            listed(&atomic_requirements(&m2(), PriorityLevel::High).unwrap()),
            ["a->a"]
        );
        assert!(atomic_requirements(&m1(), PriorityLevel::None).is_err());
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(
            listed(&sequence_requirements(&m1(), PriorityLevel::High).unwrap()),
            ["s->a->t"]
        );
        assert_eq!(
            listed(&sequence_requirements(&m1(), PriorityLevel::Medium).unwrap()),
            ["b->t", "s->a->t"]
        );
        assert_eq!(
            listed(&sequence_requirements(&m2(), PriorityLevel::High).unwrap()),
            ["a->a"]
        );
    }

    #[test]
    fn sequence_opens_pure_cycles_at_smallest_edge() {
        let m = ModelBuilder::new("ring")
            .nodes(["s", "a", "b", "c", "t"])
            .start("s")
            .end("t")
            .edge("e1", "s", "a", Priority::Low)
            .edge("e2", "a", "b", Priority::High)
            .edge("e3", "b", "c", Priority::High)
            .edge("e0", "c", "a", Priority::High)
            .edge("e4", "a", "t", Priority::Low)
            .build()
            .unwrap();
        assert_eq!(
            listed(&sequence_requirements(&m, PriorityLevel::High).unwrap()),
            ["c->a->b->c"]
        );
    }

    #[test]
    fn edge_pair_examples() {
        assert_eq!(
            listed(&edge_pair_requirements(&m1())),
            ["s->a->t", "s->b->t"]
        );
        assert_eq!(
            listed(&edge_pair_requirements(&m2())),
            ["a->a->a", "a->a->t", "s->a->a", "s->a->t"]
        );
        assert!(edge_pair_requirements(&single_edge()).is_empty());
    }

    #[test]
    fn tdl_examples() {
        assert_eq!(
            listed(&tdl_requirements(&m2(), 3).unwrap()),
            ["a->a->a->a", "a->a->a->t", "s->a->a->a", "s->a->a->t"]
        );
        assert!(tdl_requirements(&m1(), 3).unwrap().is_empty());
        let four = tdl_requirements(&m2(), 4).unwrap();
        assert_eq!(four.len(), 4);
        assert!(four.paths().iter().all(|p| p.nodes().len() == 5));
        assert_eq!(
            tdl_requirements(&m2(), 2),
            Err(RequirementError::InvalidTdl(2))
        );
    }

    #[test]
    fn prime_path_examples() {
        let g = to_plain_graph(&m1()).unwrap();
        assert_eq!(listed(&prime_paths(&g).unwrap()), ["s->a->t", "s->b->t"]);
        let g = to_plain_graph(&m2()).unwrap();
        assert_eq!(listed(&prime_paths(&g).unwrap()), ["a->a", "s->a->t"]);
        let g = to_plain_graph(&single_edge()).unwrap();
        assert_eq!(listed(&prime_paths(&g).unwrap()), ["s->t"]);
    }

    #[test]
    fn prime_path_cap() {
        let g = to_plain_graph(&m1()).unwrap();
        assert_eq!(
            prime_paths_with_cap(&g, 3),
            Err(RequirementError::PrimeCapExceeded(3))
        );
    }

    #[test]
    fn dispatch() {
        let m = m1();
        let high = CoverageSpec::new(Intensity::Edge, PriorityLevel::High);
        assert_eq!(
            build_requirements(&m, high, Conversion::Atomic).unwrap(),
            atomic_requirements(&m, PriorityLevel::High).unwrap()
        );
        let pair = CoverageSpec::new(Intensity::EdgePair, PriorityLevel::High);
        assert_eq!(
            build_requirements(&m, pair, Conversion::NotApplicable)
                .unwrap()
                .paths(),
            edge_pair_requirements(&m).paths()
        );
        let none = CoverageSpec::new(Intensity::Edge, PriorityLevel::None);
        assert!(matches!(
            build_requirements(&m, none, Conversion::Atomic),
            Err(RequirementError::InvalidCombination(_))
        ));
        assert!(build_requirements(&m, pair, Conversion::Sequence).is_err());
        assert!(build_requirements(&m, high, Conversion::NotApplicable).is_err());
    }

    #[test]
    fn parse_coverage_names() {
        assert_eq!("tdl:4".parse::<Intensity>().unwrap(), Intensity::Tdl(4));
        assert!("tdl:2".parse::<Intensity>().is_err());
        assert_eq!(
            "edge-pair".parse::<Intensity>().unwrap(),
            Intensity::EdgePair
        );
        assert_eq!(
            "none".parse::<PriorityLevel>().unwrap(),
            PriorityLevel::None
        );
        assert!("low".parse::<PriorityLevel>().is_err());
    }

    fn random(seed: u64) -> SutModel {
        let p = RandomModelParams {
            node_count: 4 + (seed % 20) as usize,
            edge_factor: 1.2 + (seed % 4) as f64 * 0.1,
            high_ratio: 0.3,
            medium_ratio: 0.25,
            loop_count: (seed % 3) as usize,
            end_count: 1 + (seed % 2) as usize,
        };
        generate_random_model(&p, seed).unwrap()
    }

    proptest! {
        #[test]
        fn sequence_covers_each_priority_edge_once(seed in 0u64..5000) {
            let m = random(seed);
            let topo = Topology::new(&m);
            for level in [PriorityLevel::High, PriorityLevel::Medium] {
                let mut used: Vec<usize> = sequence_idx(&topo, level).concat();
                used.sort();
                let expected: Vec<usize> = (0..topo.edges.len())
                    .filter(|&k| level.selects(topo.edges[k].priority))
                    .collect();
                prop_assert_eq!(&used, &expected);
                let set = sequence_requirements(&m, level).unwrap();
                prop_assert!(set.len() <= expected.len());
            }
        }

        #[test]
        fn edge_pair_count_is_degree_product(seed in 0u64..5000) {
            let m = random(seed);
            let topo = Topology::new(&m);
            let expected: usize = (0..topo.nodes.len())
                .map(|v| topo.edges.iter().filter(|e| e.target == v).count() * topo.out_edges[v].len())
                .sum();
            prop_assert_eq!(edge_pair_requirements(&m).len(), expected);
        }

        #[test]
        fn no_prime_path_inside_another(seed in 0u64..5000) {
            let g = to_plain_graph(&random(seed)).unwrap();
            let primes = prime_paths(&g).unwrap();
            let paths: Vec<&[NodeId]> = primes.paths().iter().map(|p| p.nodes()).collect();
            for a in &paths {
                for b in &paths {
                    if a != b {
                        prop_assert!(!b.windows(a.len()).any(|w| w == *a));
                    }
                }
            }
        }
    }
}
