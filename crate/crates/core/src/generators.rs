//! Test set generators. Every generator returns a [`TestSet`] whose paths run
//! from the start node to an end node and whose order is canonical.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{EdgeId, NodeId, PlainGraph, SutModel, Topology};
use crate::requirements::{
    self, chain_nodes, check_pl, join_path, sequence_idx, walks_idx, Conversion, PriorityLevel,
    RequirementError, RequirementPath, RequirementSet, DEFAULT_PRIME_CAP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("requirement `{0}` is not a path of the graph")]
    ForeignRequirement(String),
    #[error("requirement set is empty")]
    EmptyRequirements,
    #[error("T is invalid: required edges {} are covered by no candidate path", join_edges(.missing))]
    InvalidTestSet { missing: Vec<EdgeId> },
    #[error("TDL must be at least 1")]
    ZeroTdl,
    #[error(transparent)]
    Requirements(#[from] RequirementError),
}

fn join_edges(ids: &[EdgeId]) -> String {
    ids.iter().map(EdgeId::as_str).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgorithmId {
    Pct,
    Ppt,
    Bf,
    Sc,
    Pg,
    Rsc,
}

impl AlgorithmId {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Pct => "PCT",
            AlgorithmId::Ppt => "PPT",
            AlgorithmId::Bf => "BF",
            AlgorithmId::Sc => "SC",
            AlgorithmId::Pg => "PG",
            AlgorithmId::Rsc => "RSC",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PCT" => Ok(AlgorithmId::Pct),
            "PPT" => Ok(AlgorithmId::Ppt),
            "BF" => Ok(AlgorithmId::Bf),
            "SC" => Ok(AlgorithmId::Sc),
            "PG" => Ok(AlgorithmId::Pg),
            "RSC" => Ok(AlgorithmId::Rsc),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// One test case: a walk from the start node to an end node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TestPath {
    nodes: Vec<NodeId>,
}

impl TestPath {
    /// Checks the walk against `m`: at least one edge, anchored at the start
    /// node and an end node, consecutive nodes joined by edges.
    pub fn new(m: &SutModel, nodes: Vec<NodeId>) -> Option<Self> {
        let topo = Topology::new(m);
        let idx = topo.index_path(&nodes)?;
        anchored(&topo, &idx).then_some(Self { nodes })
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Whether `sub` occurs as a contiguous sub-path.
    pub fn contains(&self, sub: &[NodeId]) -> bool {
        !sub.is_empty() && self.nodes.windows(sub.len()).any(|w| w == sub)
    }
}

impl fmt::Display for TestPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_path(&self.nodes))
    }
}

fn anchored(topo: &Topology, path: &[usize]) -> bool {
    path.len() >= 2 && path[0] == topo.start && topo.is_end[*path.last().expect("len >= 2")]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSet {
    pub algorithm: AlgorithmId,
    pub conversion: Conversion,
    paths: Vec<TestPath>,
}

impl TestSet {
    /// Sorts canonically and drops duplicates.
    pub fn new(algorithm: AlgorithmId, conversion: Conversion, mut paths: Vec<TestPath>) -> Self {
        paths.sort();
        paths.dedup();
        Self {
            algorithm,
            conversion,
            paths,
        }
    }

    fn from_indices(
        topo: &Topology,
        algorithm: AlgorithmId,
        conversion: Conversion,
        paths: Vec<Vec<usize>>,
    ) -> Self {
        let paths = paths
            .into_iter()
            .map(|p| TestPath {
                nodes: topo.id_path(&p),
            })
            .collect();
        Self::new(algorithm, conversion, paths)
    }

    pub fn paths(&self) -> &[TestPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// One test case per line, nodes joined by `->`.
    pub fn to_listing(&self) -> String {
        let mut out = String::new();
        for p in &self.paths {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

/// Extends a requirement to a full test path: the shortest prefix from the
/// start node, the requirement itself, and the shortest suffix to the nearest
/// end node. Ties go to the lexicographically smaller node sequence.
pub fn extend_to_test_path(
    g: &PlainGraph,
    p: &RequirementPath,
) -> Result<TestPath, GeneratorError> {
    let idx = index_requirement(&g.topo, p)?;
    let dist_end = g.topo.distance_to_end();
    Ok(TestPath {
        nodes: g.topo.id_path(&extend_idx(&g.topo, &dist_end, &idx)),
    })
}

fn index_requirement(topo: &Topology, p: &RequirementPath) -> Result<Vec<usize>, GeneratorError> {
    topo.index_path(p.nodes())
        .ok_or_else(|| GeneratorError::ForeignRequirement(p.to_string()))
}

fn index_requirements(
    topo: &Topology,
    r: &RequirementSet,
) -> Result<Vec<Vec<usize>>, GeneratorError> {
    if r.is_empty() {
        return Err(GeneratorError::EmptyRequirements);
    }
    r.paths()
        .iter()
        .map(|p| index_requirement(topo, p))
        .collect()
}

/// Follows lexicographically smallest successors down a distance field.
fn descend(topo: &Topology, dist: &[Option<usize>], from: usize, out: &mut Vec<usize>) {
    let mut cur = from;
    let mut d = dist[cur].expect("validated graph: target reachable");
    while d > 0 {
        cur = *topo.succ[cur]
            .iter()
            .find(|&&w| dist[w] == Some(d - 1))
            .expect("distance field has a descending successor");
        out.push(cur);
        d -= 1;
    }
}

pub(crate) fn extend_idx(topo: &Topology, dist_end: &[Option<usize>], req: &[usize]) -> Vec<usize> {
    let first = req[0];
    let last = *req.last().expect("requirements are non-empty");
    let mut path = vec![topo.start];
    if first != topo.start {
        let dist = topo.distance_to_any(&[first]);
        descend(topo, &dist, topo.start, &mut path);
    }
    path.extend_from_slice(&req[1..]);
    descend(topo, dist_end, last, &mut path);
    path
}

/// For every candidate, the indices of the requirements it contains.
fn coverage_lists(candidates: &[Vec<usize>], reqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut by_len: HashMap<usize, HashMap<&[usize], usize>> = HashMap::new();
    for (i, r) in reqs.iter().enumerate() {
        by_len.entry(r.len()).or_default().insert(r.as_slice(), i);
    }
    let mut lens: Vec<usize> = by_len.keys().copied().collect();
    lens.sort_unstable();
    candidates
        .iter()
        .map(|c| {
            let mut covered = Vec::new();
            for &len in &lens {
                let table = &by_len[&len];
                for w in c.windows(len) {
                    if let Some(&i) = table.get(w) {
                        covered.push(i);
                    }
                }
            }
            covered.sort_unstable();
            covered.dedup();
            covered
        })
        .collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

/// Canonical candidate order: fewer edges first, then lexicographic.
fn by_size_then_lex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn dedup_sorted(mut paths: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    paths.sort_by(|a, b| by_size_then_lex(a, b));
    paths.dedup();
    paths
}

pub(crate) fn bf_idx(topo: &Topology, reqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let dist_end = topo.distance_to_end();
    let candidates = dedup_sorted(
        reqs.iter()
            .map(|r| extend_idx(topo, &dist_end, r))
            .collect(),
    );
    let cover = coverage_lists(&candidates, reqs);
    // Keep a candidate unless another covers a strict superset of its
    // requirements, or an earlier candidate covers exactly the same ones.
    candidates
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !(0..candidates.len()).any(|j| {
                j != i
                    && is_subset(&cover[i], &cover[j])
                    && (cover[i].len() < cover[j].len() || j < i)
            })
        })
        .map(|(_, c)| c.clone())
        .collect()
}

/// Brute force: extend every requirement, then prune duplicates and paths
/// whose covered requirements are subsumed by another path.
pub fn bf_generate(g: &PlainGraph, r: &RequirementSet) -> Result<TestSet, GeneratorError> {
    let reqs = index_requirements(&g.topo, r)?;
    let paths = bf_idx(&g.topo, &reqs);
    Ok(TestSet::from_indices(
        &g.topo,
        AlgorithmId::Bf,
        r.conversion,
        paths,
    ))
}

pub(crate) fn sc_idx(topo: &Topology, reqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut unique = reqs.to_vec();
    unique.sort();
    unique.dedup();
    let reqs = unique.as_slice();
    let dist_end = topo.distance_to_end();
    let mut pool: Vec<Vec<usize>> = reqs
        .iter()
        .map(|r| extend_idx(topo, &dist_end, r))
        .collect();
    pool.extend(pg_idx(topo, reqs));
    let pool = dedup_sorted(pool);
    let cover = coverage_lists(&pool, reqs);

    let mut covered = vec![false; reqs.len()];
    let mut remaining = reqs.len();
    let mut picked = Vec::new();
    let mut taken = vec![false; pool.len()];
    while remaining > 0 {
        // Pool is sorted by (edges, lex), so the first maximum wins ties.
        let mut best: Option<(usize, usize)> = None;
        for (i, list) in cover.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let gain = list.iter().filter(|&&r| !covered[r]).count();
            if gain > 0 && best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        let (i, gain) = best.expect("every requirement has its own extension in the pool");
        taken[i] = true;
        for &r in &cover[i] {
            covered[r] = true;
        }
        remaining -= gain;
        picked.push(pool[i].clone());
    }
    picked
}

/// Greedy set cover over requirement extensions and spliced candidates.
pub fn sc_generate(g: &PlainGraph, r: &RequirementSet) -> Result<TestSet, GeneratorError> {
    let reqs = index_requirements(&g.topo, r)?;
    let paths = sc_idx(&g.topo, &reqs);
    Ok(TestSet::from_indices(
        &g.topo,
        AlgorithmId::Sc,
        r.conversion,
        paths,
    ))
}

/// Longest proper overlap where a suffix of `p` equals a prefix of `q`.
fn overlap(p: &[usize], q: &[usize]) -> usize {
    let max = p.len().min(q.len()) - 1;
    (1..=max)
        .rev()
        .find(|&k| p[p.len() - k..] == q[..k])
        .unwrap_or(0)
}

/// Requirements that are not sub-paths of another requirement, in
/// canonical order.
fn maximal_requirements(reqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut sorted: Vec<Vec<usize>> = reqs.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut inner: HashSet<&[usize]> = HashSet::new();
    for p in &sorted {
        for i in 0..p.len() {
            for j in i + 1..=p.len() {
                if j - i < p.len() {
                    inner.insert(&p[i..j]);
                }
            }
        }
    }
    sorted
        .iter()
        .filter(|p| !inner.contains(p.as_slice()))
        .cloned()
        .collect()
}

/// Splices requirements into super-paths along a minimum path cover of the
/// overlap graph. Cycles in the matching are opened at their smallest
/// requirement.
pub(crate) fn splice_idx(reqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let reqs = maximal_requirements(reqs);
    let n = reqs.len();
    let mut by_first: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, q) in reqs.iter().enumerate() {
        by_first.entry(q[0]).or_default().push(j);
    }
    let mut arcs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, p) in reqs.iter().enumerate() {
        let mut seen = HashSet::new();
        for start in 1..p.len() {
            let Some(targets) = by_first.get(&p[start]) else {
                continue;
            };
            for &j in targets {
                if j != i && seen.insert(j) {
                    let k = overlap(p, &reqs[j]);
                    if k > 0 {
                        arcs[i].push((j, k));
                    }
                }
            }
        }
        arcs[i].sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    }

    let (next, prev) = max_matching(&arcs, n);

    let mut visited = vec![false; n];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let walk = |head: usize, visited: &mut Vec<bool>| {
        let mut chain = vec![head];
        visited[head] = true;
        let mut cur = head;
        while let Some(j) = next[cur] {
            if visited[j] {
                break;
            }
            visited[j] = true;
            chain.push(j);
            cur = j;
        }
        chain
    };
    for (i, p) in prev.iter().enumerate() {
        if p.is_none() {
            chains.push(walk(i, &mut visited));
        }
    }
    for i in 0..n {
        if !visited[i] {
            chains.push(walk(i, &mut visited));
        }
    }

    chains
        .into_iter()
        .map(|chain| {
            let mut path = reqs[chain[0]].clone();
            for pair in chain.windows(2) {
                let k = overlap(&reqs[pair[0]], &reqs[pair[1]]);
                path.extend_from_slice(&reqs[pair[1]][k..]);
            }
            path
        })
        .collect()
}

/// Maximum bipartite matching (augmenting paths, deterministic order).
/// Returns `(next, prev)`: the matched successor and predecessor of each
/// requirement.
fn max_matching(
    arcs: &[Vec<(usize, usize)>],
    n: usize,
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];

    for i in 0..n {
        if let Some(&(j, _)) = arcs[i].iter().find(|&&(j, _)| prev[j].is_none()) {
            next[i] = Some(j);
            prev[j] = Some(i);
        }
    }

    fn augment(
        i: usize,
        arcs: &[Vec<(usize, usize)>],
        seen: &mut [bool],
        next: &mut [Option<usize>],
        prev: &mut [Option<usize>],
    ) -> bool {
        for &(j, _) in &arcs[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if prev[j].is_none_or(|owner| augment(owner, arcs, seen, next, prev)) {
                next[i] = Some(j);
                prev[j] = Some(i);
                return true;
            }
        }
        false
    }

    let mut seen = vec![false; n];
    for i in 0..n {
        if next[i].is_none() && !arcs[i].is_empty() {
            seen.iter_mut().for_each(|s| *s = false);
            augment(i, arcs, &mut seen, &mut next, &mut prev);
        }
    }
    (next, prev)
}

pub(crate) fn pg_idx(topo: &Topology, reqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let dist_end = topo.distance_to_end();
    let paths = splice_idx(reqs)
        .into_iter()
        .map(|p| extend_idx(topo, &dist_end, &p))
        .collect();
    dedup_sorted(paths)
}

/// Prefix-graph splicing: chains of maximally overlapping requirements from a
/// minimum path cover, each spliced into one super-path and extended.
pub fn pg_generate(g: &PlainGraph, r: &RequirementSet) -> Result<TestSet, GeneratorError> {
    let reqs = index_requirements(&g.topo, r)?;
    let paths = pg_idx(&g.topo, &reqs);
    Ok(TestSet::from_indices(
        &g.topo,
        AlgorithmId::Pg,
        r.conversion,
        paths,
    ))
}

fn path_edges(topo: &Topology, path: &[usize]) -> Vec<usize> {
    path.windows(2)
        .map(|w| topo.edge_at(w[0], w[1]).expect("paths follow edges"))
        .collect()
}

/// Set covering with test set reduction, using [`DEFAULT_PRIME_CAP`].
pub fn rsc_generate(
    m: &SutModel,
    g: &PlainGraph,
    pl: PriorityLevel,
) -> Result<TestSet, GeneratorError> {
    rsc_generate_with_cap(m, g, pl, DEFAULT_PRIME_CAP)
}

/// Builds the prime-path test set `P` with SC, then repeatedly takes the
/// path of `P` containing the most still-uncovered priority edges until all
/// priority edges are covered.
pub fn rsc_generate_with_cap(
    m: &SutModel,
    g: &PlainGraph,
    pl: PriorityLevel,
    prime_cap: usize,
) -> Result<TestSet, GeneratorError> {
    let level = check_pl(pl)?;
    let topo = &g.topo;
    let primes = requirements::prime_idx(topo, prime_cap)?;
    let pool = sc_idx(topo, &primes);
    let mut pool = dedup_sorted(pool);
    let pool_edges: Vec<Vec<usize>> = pool.iter().map(|p| path_edges(topo, p)).collect();

    let required = cover_mask(m, topo, level);
    let mut cover = required.clone();
    let mut left = cover.iter().filter(|&&c| c).count();
    let mut picked = Vec::new();
    let mut used = vec![false; pool.len()];
    while left > 0 {
        let mut best: Option<(usize, usize)> = None;
        for (i, edges) in pool_edges.iter().enumerate() {
            if used[i] {
                continue;
            }
            let mut distinct: Vec<usize> = edges.iter().copied().filter(|&e| cover[e]).collect();
            distinct.sort_unstable();
            distinct.dedup();
            let gain = distinct.len();
            if gain > 0 && best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        let Some((i, gain)) = best else {
            break;
        };
        used[i] = true;
        for &e in &pool_edges[i] {
            cover[e] = false;
        }
        left -= gain;
        picked.push(i);
    }

    // completeness check
    let mut present = vec![false; topo.edges.len()];
    for &i in &picked {
        for &e in &pool_edges[i] {
            present[e] = true;
        }
    }
    let missing: Vec<EdgeId> = (0..topo.edges.len())
        .filter(|&e| required[e] && !present[e])
        .map(|e| topo.edges[e].id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(GeneratorError::InvalidTestSet { missing });
    }
    let paths = picked
        .into_iter()
        .map(|i| std::mem::take(&mut pool[i]))
        .collect();
    Ok(TestSet::from_indices(
        topo,
        AlgorithmId::Rsc,
        Conversion::NotApplicable,
        paths,
    ))
}

/// Edges selected by `level`, looked up by edge id in `m`.
fn cover_mask(m: &SutModel, topo: &Topology, level: PriorityLevel) -> Vec<bool> {
    topo.edges
        .iter()
        .map(|e| m.edge(&e.id).is_some_and(|me| level.selects(me.priority)))
        .collect()
}

/// Prioritized requirement set used by PPT: priority-edge chains at TDL 1,
/// otherwise every TDL-length walk that contains a priority edge. A priority
/// edge lying on no such walk (e.g. start straight to a sink) becomes a
/// one-edge requirement so it is still covered.
pub(crate) fn ppt_requirements(
    topo: &Topology,
    tdl: usize,
    level: PriorityLevel,
) -> Vec<Vec<usize>> {
    if tdl == 1 {
        return sequence_idx(topo, level)
            .into_iter()
            .map(|chain| chain_nodes(topo, &chain))
            .collect();
    }
    let is_priority = |u: usize, v: usize| {
        topo.edges_at(u, v)
            .iter()
            .any(|&e| level.selects(topo.edges[e].priority))
    };
    let mut reqs: Vec<Vec<usize>> = walks_idx(topo, tdl)
        .into_iter()
        .filter(|w| w.windows(2).any(|p| is_priority(p[0], p[1])))
        .collect();
    let on_walk: HashSet<(usize, usize)> = reqs
        .iter()
        .flat_map(|w| w.windows(2).map(|p| (p[0], p[1])))
        .collect();
    let mut stranded: Vec<Vec<usize>> = topo
        .edges
        .iter()
        .filter(|e| level.selects(e.priority) && !on_walk.contains(&(e.source, e.target)))
        .map(|e| vec![e.source, e.target])
        .collect();
    stranded.sort();
    stranded.dedup();
    reqs.extend(stranded);
    reqs
}

/// Prioritized process test: covers the priority parts of the model at the
/// given test depth level by splicing the prioritized requirements.
pub fn ppt_generate(
    m: &SutModel,
    tdl: usize,
    pl: PriorityLevel,
) -> Result<TestSet, GeneratorError> {
    let level = check_pl(pl)?;
    if tdl == 0 {
        return Err(GeneratorError::ZeroTdl);
    }
    let topo = Topology::new(m);
    let reqs = ppt_requirements(&topo, tdl, level);
    let paths = pg_idx(&topo, &reqs);
    Ok(TestSet::from_indices(
        &topo,
        AlgorithmId::Ppt,
        Conversion::NotApplicable,
        paths,
    ))
}

/// All-edges (TDL 1) or all TDL-length walks, ignoring priorities.
pub(crate) fn pct_requirements(topo: &Topology, tdl: usize) -> Vec<Vec<usize>> {
    walks_idx(topo, tdl)
}

/// Process cycle test: the unprioritized baseline covering every edge or
/// every walk of `tdl` edges.
pub fn pct_generate(m: &SutModel, tdl: usize) -> Result<TestSet, GeneratorError> {
    if tdl == 0 {
        return Err(GeneratorError::ZeroTdl);
    }
    let topo = Topology::new(m);
    let reqs = pct_requirements(&topo, tdl);
    if reqs.is_empty() {
        return Ok(TestSet::new(
            AlgorithmId::Pct,
            Conversion::NotApplicable,
            Vec::new(),
        ));
    }
    let paths = sc_idx(&topo, &reqs);
    Ok(TestSet::from_indices(
        &topo,
        AlgorithmId::Pct,
        Conversion::NotApplicable,
        paths,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{generate_random_model, to_plain_graph, Priority, RandomModelParams};
    use crate::requirements::{
        atomic_requirements, edge_pair_requirements, prime_paths, sequence_requirements,
    };
    use proptest::prelude::*;

    fn listed(t: &TestSet) -> Vec<String> {
        t.paths().iter().map(|p| p.to_string()).collect()
    }

    fn req(m: &SutModel, nodes: &[&str]) -> RequirementPath {
        RequirementPath::new(m, ids(nodes)).unwrap()
    }

    #[test]
    fn extension_examples() {
        let g = to_plain_graph(&m2()).unwrap();
        let t = extend_to_test_path(&g, &req(&m2(), &["a", "a"])).unwrap();
        assert_eq!(t.to_string(), "s->a->a->t");
        let g = to_plain_graph(&m1()).unwrap();
        let t = extend_to_test_path(&g, &req(&m1(), &["s", "a", "t"])).unwrap();
        assert_eq!(t.to_string(), "s->a->t");
        let t = extend_to_test_path(&g, &req(&m1(), &["b", "t"])).unwrap();
        assert_eq!(t.to_string(), "s->b->t");
    }

    #[test]
    fn extension_prefers_lexicographic_ties() {
        // Two shortest routes s->x->t and s->y->t; the suffix from s picks x.
        let m = crate::model::ModelBuilder::new("tie")
            .nodes(["s", "y", "x", "t"])
            .start("s")
            .end("t")
            .edge("a", "s", "y", crate::model::Priority::Low)
            .edge("b", "s", "x", crate::model::Priority::Low)
            .edge("c", "y", "t", crate::model::Priority::Low)
            .edge("d", "x", "t", crate::model::Priority::Low)
            .edge("e", "t", "s", crate::model::Priority::Low)
            .build()
            .unwrap();
        let g = to_plain_graph(&m).unwrap();
        let t = extend_to_test_path(&g, &req(&m, &["t", "s"])).unwrap();
        assert_eq!(t.to_string(), "s->x->t->s->x->t");
    }

    #[test]
    fn bf_examples() {
        let g1 = to_plain_graph(&m1()).unwrap();
        let high = atomic_requirements(&m1(), PriorityLevel::High).unwrap();
        assert_eq!(listed(&bf_generate(&g1, &high).unwrap()), ["s->a->t"]);
        let medium = atomic_requirements(&m1(), PriorityLevel::Medium).unwrap();
        assert_eq!(
            listed(&bf_generate(&g1, &medium).unwrap()),
            ["s->a->t", "s->b->t"]
        );
        let g2 = to_plain_graph(&m2()).unwrap();
        let high = atomic_requirements(&m2(), PriorityLevel::High).unwrap();
        assert_eq!(listed(&bf_generate(&g2, &high).unwrap()), ["s->a->a->t"]);
        let t = bf_generate(
            &g1,
            &sequence_requirements(&m1(), PriorityLevel::High).unwrap(),
        )
        .unwrap();
        assert_eq!(t.algorithm, AlgorithmId::Bf);
        assert_eq!(t.conversion, Conversion::Sequence);
    }

    #[test]
    fn sc_examples() {
        let g1 = to_plain_graph(&m1()).unwrap();
        let medium = atomic_requirements(&m1(), PriorityLevel::Medium).unwrap();
        assert_eq!(
            listed(&sc_generate(&g1, &medium).unwrap()),
            ["s->a->t", "s->b->t"]
        );
        let high = atomic_requirements(&m1(), PriorityLevel::High).unwrap();
        assert_eq!(listed(&sc_generate(&g1, &high).unwrap()), ["s->a->t"]);
        let g2 = to_plain_graph(&m2()).unwrap();
        let pairs = edge_pair_requirements(&m2());
        assert_eq!(
            listed(&sc_generate(&g2, &pairs).unwrap()),
            ["s->a->a->a->t", "s->a->t"]
        );
    }

    #[test]
    fn pg_examples() {
        let g1 = to_plain_graph(&m1()).unwrap();
        let high = atomic_requirements(&m1(), PriorityLevel::High).unwrap();
        assert_eq!(listed(&pg_generate(&g1, &high).unwrap()), ["s->a->t"]);
        let medium = atomic_requirements(&m1(), PriorityLevel::Medium).unwrap();
        assert_eq!(
            listed(&pg_generate(&g1, &medium).unwrap()),
            ["s->a->t", "s->b->t"]
        );
        let g2 = to_plain_graph(&m2()).unwrap();
        let high = atomic_requirements(&m2(), PriorityLevel::High).unwrap();
        assert_eq!(listed(&pg_generate(&g2, &high).unwrap()), ["s->a->a->t"]);
    }

    #[test]
    fn splice_breaks_cyclic_overlaps() {
        // a->b overlaps b->a and back again; the matching forms a cycle.
        let chains = splice_idx(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(chains, [vec![0, 1, 0]]);
        let chains = splice_idx(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0], [0, 1, 2, 0, 1]);
    }

    #[test]
    fn rsc_examples() {
        let g1 = to_plain_graph(&m1()).unwrap();
        assert_eq!(
            listed(&rsc_generate(&m1(), &g1, PriorityLevel::High).unwrap()),
            ["s->a->t"]
        );
        assert_eq!(
            listed(&rsc_generate(&m1(), &g1, PriorityLevel::Medium).unwrap()),
            ["s->a->t", "s->b->t"]
        );
        let g2 = to_plain_graph(&m2()).unwrap();
        assert_eq!(
            listed(&rsc_generate(&m2(), &g2, PriorityLevel::High).unwrap()),
            ["s->a->a->t"]
        );
        assert!(rsc_generate(&m1(), &g1, PriorityLevel::None).is_err());
    }

    #[test]
    fn rsc_prime_pool_is_the_sc_prime_test_set() {
        let g1 = to_plain_graph(&m1()).unwrap();
        let pool = sc_generate(&g1, &prime_paths(&g1).unwrap()).unwrap();
        assert_eq!(listed(&pool), ["s->a->t", "s->b->t"]);
    }

    #[test]
    fn ppt_examples() {
        assert_eq!(
            listed(&ppt_generate(&m1(), 1, PriorityLevel::High).unwrap()),
            ["s->a->t"]
        );
        assert_eq!(
            listed(&ppt_generate(&m1(), 2, PriorityLevel::High).unwrap()),
            ["s->a->t"]
        );
        assert_eq!(
            listed(&ppt_generate(&m2(), 2, PriorityLevel::High).unwrap()),
            ["s->a->a->a->t"]
        );
        assert_eq!(
            ppt_generate(&m1(), 0, PriorityLevel::High),
            Err(GeneratorError::ZeroTdl)
        );
    }

    #[test]
    fn ppt_keeps_priority_edges_outside_every_walk() {
        // s->t is high but no 2-edge walk passes through it
        let m = crate::model::ModelBuilder::new("shortcut")
            .nodes(["s", "a", "t"])
            .start("s")
            .end("t")
            .edge("e1", "s", "a", Priority::Low)
            .edge("e2", "a", "t", Priority::High)
            .edge("e3", "s", "t", Priority::High)
            .build()
            .unwrap();
        assert_eq!(
            listed(&ppt_generate(&m, 2, PriorityLevel::High).unwrap()),
            ["s->a->t", "s->t"]
        );
        assert_eq!(
            listed(&ppt_generate(&m, 3, PriorityLevel::High).unwrap()),
            ["s->a->t", "s->t"]
        );
        // unprioritized walks of exactly TDL edges are unchanged
        assert_eq!(listed(&pct_generate(&m, 2).unwrap()), ["s->a->t"]);
    }

    #[test]
    fn pct_examples() {
        assert_eq!(
            listed(&pct_generate(&m1(), 1).unwrap()),
            ["s->a->t", "s->b->t"]
        );
        assert_eq!(listed(&pct_generate(&m2(), 1).unwrap()), ["s->a->a->t"]);
        assert_eq!(
            listed(&pct_generate(&m1(), 2).unwrap()),
            ["s->a->t", "s->b->t"]
        );
    }

    #[test]
    fn foreign_and_empty_requirements() {
        let g1 = to_plain_graph(&m1()).unwrap();
        let foreign = edge_pair_requirements(&m2());
        assert!(matches!(
            bf_generate(&g1, &foreign),
            Err(GeneratorError::ForeignRequirement(_))
        ));
        let empty = edge_pair_requirements(&single_edge());
        assert_eq!(
            sc_generate(&g1, &empty),
            Err(GeneratorError::EmptyRequirements)
        );
    }

    #[test]
    fn test_path_validation() {
        assert!(TestPath::new(&m1(), ids(&["s", "a", "t"])).is_some());
        assert!(TestPath::new(&m1(), ids(&["a", "t"])).is_none());
        assert!(TestPath::new(&m1(), ids(&["s", "a"])).is_none());
        assert!(TestPath::new(&m1(), ids(&["s", "t"])).is_none());
    }

    fn random(seed: u64) -> SutModel {
        let p = RandomModelParams {
            node_count: 4 + (seed % 12) as usize,
            edge_factor: 1.2 + (seed % 4) as f64 * 0.1,
            high_ratio: 0.3,
            medium_ratio: 0.25,
            loop_count: (seed % 3) as usize,
            end_count: 1 + (seed % 2) as usize,
        };
        generate_random_model(&p, seed).unwrap()
    }

    fn covers_all(t: &TestSet, r: &RequirementSet) -> bool {
        r.paths()
            .iter()
            .all(|req| t.paths().iter().any(|p| p.contains(req.nodes())))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn requirement_generators_cover_and_anchor(seed in 0u64..10_000) {
            let m = random(seed);
            let g = to_plain_graph(&m).unwrap();
            let sets = [
                atomic_requirements(&m, PriorityLevel::Medium).unwrap(),
                sequence_requirements(&m, PriorityLevel::Medium).unwrap(),
                edge_pair_requirements(&m),
                prime_paths(&g).unwrap(),
            ];
            for r in sets.iter().filter(|r| !r.is_empty()) {
                let bf = bf_generate(&g, r).unwrap();
                let sc = sc_generate(&g, r).unwrap();
                let pg = pg_generate(&g, r).unwrap();
                for t in [&bf, &sc, &pg] {
                    prop_assert!(covers_all(t, r));
                    for p in t.paths() {
                        prop_assert!(TestPath::new(&m, p.nodes().to_vec()).is_some());
                    }
                }
            }
        }

        #[test]
        fn generators_are_deterministic(seed in 0u64..10_000) {
            let m = random(seed);
            let g = to_plain_graph(&m).unwrap();
            let a = rsc_generate(&m, &g, PriorityLevel::Medium);
            let b = rsc_generate(&m, &g, PriorityLevel::Medium);
            prop_assert_eq!(a, b);
            prop_assert_eq!(ppt_generate(&m, 2, PriorityLevel::High), ppt_generate(&m, 2, PriorityLevel::High));
        }
    }
}
