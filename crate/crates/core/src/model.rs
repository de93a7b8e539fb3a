//! SUT models: prioritized directed multigraphs with a start node and a set
//! of end nodes, their JSON document form, validation, and conversion to the
//! plain graph consumed by the requirement-driven generators.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a node. Case-sensitive, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

/// Identifier of an edge. Case-sensitive, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Priority {
    High,
    Medium,
    #[default]
    Low,
}

impl Priority {
    pub fn as_str(self) -> &'static str {
        match self {
            Priority::High => "high",
            Priority::Medium => "medium",
            Priority::Low => "low",
        }
    }
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Priority {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high" => Ok(Priority::High),
            "medium" => Ok(Priority::Medium),
            "low" => Ok(Priority::Low),
            other => Err(ModelError::Malformed(format!(
                "unknown priority level `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub source: NodeId,
    pub target: NodeId,
    pub priority: Priority,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("malformed model document: {0}")]
    Malformed(String),
    #[error("empty {0} identifier")]
    EmptyId(&'static str),
    #[error("duplicate node id `{0}`")]
    DuplicateNode(NodeId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("edge `{edge}` references unknown node `{node}`")]
    UnknownNode { edge: EdgeId, node: NodeId },
    #[error("start node `{0}` is not a node of the model")]
    UnknownStart(NodeId),
    #[error("end node `{0}` is not a node of the model")]
    UnknownEnd(NodeId),
    #[error("node priority given for unknown node `{0}`")]
    UnknownPrioritizedNode(NodeId),
    #[error("model has no end nodes")]
    NoEndNodes,
    #[error("model failed validation: {0}")]
    Invalid(ValidationReport),
    #[error("parallel edges present: {}", format_pairs(.0))]
    ParallelEdges(Vec<Vec<EdgeId>>),
    #[error("infeasible random model parameters: {0}")]
    InfeasibleParams(String),
}

fn format_pairs(groups: &[Vec<EdgeId>]) -> String {
    groups
        .iter()
        .map(|g| {
            let ids: Vec<&str> = g.iter().map(EdgeId::as_str).collect();
            format!("[{}]", ids.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A prioritized directed multigraph with a start node and end nodes.
///
/// Structural invariants (unique ids, known endpoints, start and ends among
/// the nodes, at least one end) hold for every constructed value.
/// Reachability is checked separately by [`validate_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct SutModel {
    name: String,
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    start: NodeId,
    ends: BTreeSet<NodeId>,
    node_priorities: BTreeMap<NodeId, Priority>,
}

impl SutModel {
    pub fn new(
        name: impl Into<String>,
        nodes: Vec<NodeId>,
        edges: Vec<Edge>,
        start: NodeId,
        ends: BTreeSet<NodeId>,
    ) -> Result<Self, ModelError> {
        Self::with_node_priorities(name, nodes, edges, start, ends, BTreeMap::new())
    }

    pub fn with_node_priorities(
        name: impl Into<String>,
        nodes: Vec<NodeId>,
        edges: Vec<Edge>,
        start: NodeId,
        ends: BTreeSet<NodeId>,
        node_priorities: BTreeMap<NodeId, Priority>,
    ) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for n in &nodes {
            if n.as_str().is_empty() {
                return Err(ModelError::EmptyId("node"));
            }
            if !seen.insert(n) {
                return Err(ModelError::DuplicateNode(n.clone()));
            }
        }
        let mut seen_edges = BTreeSet::new();
        for e in &edges {
            if e.id.as_str().is_empty() {
                return Err(ModelError::EmptyId("edge"));
            }
            if !seen_edges.insert(&e.id) {
                return Err(ModelError::DuplicateEdge(e.id.clone()));
            }
            for endpoint in [&e.source, &e.target] {
                if !seen.contains(endpoint) {
                    return Err(ModelError::UnknownNode {
                        edge: e.id.clone(),
                        node: endpoint.clone(),
                    });
                }
            }
        }
        if !seen.contains(&start) {
            return Err(ModelError::UnknownStart(start));
        }
        if ends.is_empty() {
            return Err(ModelError::NoEndNodes);
        }
        if let Some(bad) = ends.iter().find(|n| !seen.contains(n)) {
            return Err(ModelError::UnknownEnd(bad.clone()));
        }
        if let Some(bad) = node_priorities.keys().find(|n| !seen.contains(n)) {
            return Err(ModelError::UnknownPrioritizedNode(bad.clone()));
        }
        Ok(Self {
            name: name.into(),
            nodes,
            edges,
            start,
            ends,
            node_priorities,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn start(&self) -> &NodeId {
        &self.start
    }

    pub fn ends(&self) -> &BTreeSet<NodeId> {
        &self.ends
    }

    /// Node priorities are carried through parsing and serialization only.
    pub fn node_priorities(&self) -> &BTreeMap<NodeId, Priority> {
        &self.node_priorities
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    /// Number of edges whose priority is exactly `level`.
    pub fn count_priority(&self, level: Priority) -> usize {
        self.edges.iter().filter(|e| e.priority == level).count()
    }

    /// Serializes into the JSON model document.
    pub fn to_json(&self) -> String {
        let doc = ModelDocument {
            name: self.name.clone(),
            nodes: self
                .nodes
                .iter()
                .map(|id| NodeDoc { id: id.clone() })
                .collect(),
            start_node: self.start.clone(),
            end_nodes: self.ends.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    source: e.source.clone(),
                    target: e.target.clone(),
                    priority: Some(e.priority),
                })
                .collect(),
            node_priorities: if self.node_priorities.is_empty() {
                None
            } else {
                Some(self.node_priorities.clone())
            },
        };
        serde_json::to_string_pretty(&doc).expect("model document serializes")
    }
}

/// Incremental construction of a [`SutModel`], mostly for fixtures.
#[derive(Debug, Clone, Default)]
pub struct ModelBuilder {
    name: String,
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    start: Option<NodeId>,
    ends: BTreeSet<NodeId>,
}

impl ModelBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn nodes<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.nodes.extend(ids.into_iter().map(NodeId::new));
        self
    }

    pub fn start(mut self, id: &str) -> Self {
        self.start = Some(NodeId::new(id));
        self
    }

    pub fn end(mut self, id: &str) -> Self {
        self.ends.insert(NodeId::new(id));
        self
    }

    pub fn edge(mut self, id: &str, source: &str, target: &str, priority: Priority) -> Self {
        self.edges.push(Edge {
            id: EdgeId::new(id),
            source: NodeId::new(source),
            target: NodeId::new(target),
            priority,
        });
        self
    }

    pub fn build(self) -> Result<SutModel, ModelError> {
        let start = self
            .start
            .ok_or_else(|| ModelError::Malformed("missing start node".into()))?;
        SutModel::new(self.name, self.nodes, self.edges, start, self.ends)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct ModelDocument {
    name: String,
    nodes: Vec<NodeDoc>,
    start_node: NodeId,
    end_nodes: Vec<NodeId>,
    edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node_priorities: Option<BTreeMap<NodeId, Priority>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: NodeId,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: EdgeId,
    source: NodeId,
    target: NodeId,
    #[serde(default)]
    priority: Option<Priority>,
}

/// Parses a JSON model document. Edges without a priority default to low.
pub fn parse_model(text: &str) -> Result<SutModel, ModelError> {
    let doc: ModelDocument =
        serde_json::from_str(text).map_err(|e| ModelError::Malformed(e.to_string()))?;
    let mut ends = BTreeSet::new();
    for end in doc.end_nodes {
        ends.insert(end);
    }
    let edges = doc
        .edges
        .into_iter()
        .map(|e| Edge {
            id: e.id,
            source: e.source,
            target: e.target,
            priority: e.priority.unwrap_or_default(),
        })
        .collect();
    SutModel::with_node_priorities(
        doc.name,
        doc.nodes.into_iter().map(|n| n.id).collect(),
        edges,
        doc.start_node,
        ends,
        doc.node_priorities.unwrap_or_default(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IssueCode {
    UnreachableNode,
    CannotReachEnd,
    StartWithoutOutgoing,
    ParallelEdges,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::UnreachableNode => "unreachable-node",
            IssueCode::CannotReachEnd => "cannot-reach-end",
            IssueCode::StartWithoutOutgoing => "start-without-outgoing",
            IssueCode::ParallelEdges => "parallel-edges",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub severity: Severity,
    pub code: IssueCode,
    pub message: String,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn has(&self, code: IssueCode, id: &str) -> bool {
        self.issues
            .iter()
            .any(|i| i.code == code && i.ids.iter().any(|x| x == id))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .issues
            .iter()
            .map(|i| format!("{}({})", i.code.as_str(), i.ids.join(",")))
            .collect();
        if parts.is_empty() {
            f.write_str("ok")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// Checks that every node lies on some start-to-end walk.
pub fn validate_model(m: &SutModel) -> ValidationReport {
    let topo = Topology::new(m);
    let mut issues = Vec::new();

    let forward = topo.reachable_from(topo.start);
    for (i, node) in topo.nodes.iter().enumerate() {
        if !forward[i] {
            issues.push(Issue {
                severity: Severity::Error,
                code: IssueCode::UnreachableNode,
                message: format!("node `{node}` is not reachable from the start node"),
                ids: vec![node.to_string()],
            });
        }
    }
    let backward = topo.co_reachable();
    for (i, node) in topo.nodes.iter().enumerate() {
        if !backward[i] {
            issues.push(Issue {
                severity: Severity::Error,
                code: IssueCode::CannotReachEnd,
                message: format!("node `{node}` cannot reach any end node"),
                ids: vec![node.to_string()],
            });
        }
    }
    if topo.out_edges[topo.start].is_empty() {
        issues.push(Issue {
            severity: Severity::Error,
            code: IssueCode::StartWithoutOutgoing,
            message: format!(
                "start node `{}` has no outgoing edge",
                topo.nodes[topo.start]
            ),
            ids: vec![topo.nodes[topo.start].to_string()],
        });
    }
    for group in topo.parallel_groups() {
        issues.push(Issue {
            severity: Severity::Warning,
            code: IssueCode::ParallelEdges,
            message: format!(
                "edges {} connect the same ordered node pair",
                format_pairs(std::slice::from_ref(&group))
            ),
            ids: group.iter().map(|e| e.to_string()).collect(),
        });
    }

    let ok = !issues.iter().any(|i| i.severity == Severity::Error);
    ValidationReport { ok, issues }
}

/// A model graph with at most one edge per ordered node pair.
///
/// Node and edge sets are identical to the source model. Edge priorities are
/// not part of the public surface.
#[derive(Debug, Clone)]
pub struct PlainGraph {
    pub(crate) topo: Topology,
}

impl PlainGraph {
    pub fn name(&self) -> &str {
        &self.topo.name
    }

    /// Nodes in canonical (lexicographic) order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.topo.nodes
    }

    pub fn node_count(&self) -> usize {
        self.topo.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.topo.edges.len()
    }

    /// `(id, source, target)` in canonical edge-id order.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &NodeId, &NodeId)> + '_ {
        self.topo.edges.iter().map(|e| {
            (
                &e.id,
                &self.topo.nodes[e.source],
                &self.topo.nodes[e.target],
            )
        })
    }

    pub fn start(&self) -> &NodeId {
        &self.topo.nodes[self.topo.start]
    }

    pub fn ends(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.topo
            .nodes
            .iter()
            .zip(&self.topo.is_end)
            .filter(|(_, end)| **end)
            .map(|(n, _)| n)
    }

    pub fn successors(&self, node: &NodeId) -> Vec<&NodeId> {
        match self.topo.index_of(node) {
            Some(i) => self.topo.succ[i]
                .iter()
                .map(|&j| &self.topo.nodes[j])
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn edge_between(&self, source: &NodeId, target: &NodeId) -> Option<&EdgeId> {
        let u = self.topo.index_of(source)?;
        let v = self.topo.index_of(target)?;
        self.topo.edge_at(u, v).map(|e| &self.topo.edges[e].id)
    }
}

/// Converts a validated model into its plain graph.
///
/// Fails when validation reports errors or when any ordered node pair carries
/// two or more edges. Parallel edges have to be remodeled by the user.
pub fn to_plain_graph(m: &SutModel) -> Result<PlainGraph, ModelError> {
    let report = validate_model(m);
    if !report.ok {
        return Err(ModelError::Invalid(report));
    }
    let topo = Topology::new(m);
    let groups = topo.parallel_groups();
    if !groups.is_empty() {
        return Err(ModelError::ParallelEdges(groups));
    }
    Ok(PlainGraph { topo })
}

/// Index-based view of a model shared by the algorithms.
///
/// Nodes are sorted by id and edges by edge id, so index order is canonical
/// order and comparing index paths lexicographically matches comparing
/// node-id paths.
#[derive(Debug, Clone)]
pub(crate) struct Topology {
    pub name: String,
    pub nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    pub edges: Vec<TopoEdge>,
    /// Distinct successor nodes, ascending.
    pub succ: Vec<Vec<usize>>,
    /// Distinct predecessor nodes, ascending.
    pub pred: Vec<Vec<usize>>,
    pub out_edges: Vec<Vec<usize>>,
    pub start: usize,
    pub is_end: Vec<bool>,
    pair_edges: HashMap<(usize, usize), Vec<usize>>,
}

#[derive(Debug, Clone)]
pub(crate) struct TopoEdge {
    pub id: EdgeId,
    pub source: usize,
    pub target: usize,
    pub priority: Priority,
}

impl Topology {
    pub fn new(m: &SutModel) -> Self {
        let mut nodes: Vec<NodeId> = m.nodes.clone();
        nodes.sort();
        let index: HashMap<NodeId, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let mut edges: Vec<TopoEdge> = m
            .edges
            .iter()
            .map(|e| TopoEdge {
                id: e.id.clone(),
                source: index[&e.source],
                target: index[&e.target],
                priority: e.priority,
            })
            .collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));

        let n = nodes.len();
        let mut succ = vec![BTreeSet::new(); n];
        let mut pred = vec![BTreeSet::new(); n];
        let mut out_edges = vec![Vec::new(); n];
        let mut pair_edges: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            succ[e.source].insert(e.target);
            pred[e.target].insert(e.source);
            out_edges[e.source].push(k);
            pair_edges.entry((e.source, e.target)).or_default().push(k);
        }
        let mut is_end = vec![false; n];
        for end in &m.ends {
            is_end[index[end]] = true;
        }
        Self {
            name: m.name.clone(),
            start: index[&m.start],
            nodes,
            index,
            edges,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            pred: pred.into_iter().map(|s| s.into_iter().collect()).collect(),
            out_edges,
            is_end,
            pair_edges,
        }
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// The edge from `u` to `v`, taking the smallest edge id if several exist.
    pub fn edge_at(&self, u: usize, v: usize) -> Option<usize> {
        self.pair_edges
            .get(&(u, v))
            .and_then(|es| es.first().copied())
    }

    pub fn edges_at(&self, u: usize, v: usize) -> &[usize] {
        self.pair_edges
            .get(&(u, v))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn parallel_groups(&self) -> Vec<Vec<EdgeId>> {
        let mut groups: Vec<Vec<EdgeId>> = self
            .pair_edges
            .values()
            .filter(|es| es.len() > 1)
            .map(|es| es.iter().map(|&k| self.edges[k].id.clone()).collect())
            .collect();
        groups.sort();
        groups
    }

    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn co_reachable(&self) -> Vec<bool> {
        let dist = self.distance_to_end();
        dist.iter().map(Option::is_some).collect()
    }

    /// Edge-count distance from every node to its nearest end node.
    pub fn distance_to_end(&self) -> Vec<Option<usize>> {
        let targets: Vec<usize> = (0..self.nodes.len()).filter(|&i| self.is_end[i]).collect();
        self.distance_to_any(&targets)
    }

    /// Edge-count distance from every node to the nearest of `targets`.
    pub fn distance_to_any(&self, targets: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        let mut queue = VecDeque::new();
        for &t in targets {
            if dist[t].is_none() {
                dist[t] = Some(0);
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued nodes have a distance");
            for &u in &self.pred[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Maps a node-id path to indices, checking that consecutive nodes are
    /// joined by an edge.
    pub fn index_path(&self, nodes: &[NodeId]) -> Option<Vec<usize>> {
        let path: Vec<usize> = nodes
            .iter()
            .map(|n| self.index_of(n))
            .collect::<Option<_>>()?;
        path.windows(2)
            .all(|w| self.edge_at(w[0], w[1]).is_some())
            .then_some(path)
    }

    pub fn id_path(&self, path: &[usize]) -> Vec<NodeId> {
        path.iter().map(|&i| self.nodes[i].clone()).collect()
    }
}

/// Shape parameters of a seeded random model.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomModelParams {
    pub node_count: usize,
    /// Target `|E| ≈ edge_factor · |N|`.
    pub edge_factor: f64,
    pub high_ratio: f64,
    pub medium_ratio: f64,
    pub loop_count: usize,
    pub end_count: usize,
}

impl RandomModelParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fail = |msg: String| Err(ModelError::InfeasibleParams(msg));
        if self.node_count < 2 {
            return fail(format!(
                "node_count must be at least 2, got {}",
                self.node_count
            ));
        }
        if !self.edge_factor.is_finite() || self.edge_factor < 1.0 {
            return fail(format!(
                "edge_factor must be >= 1, got {}",
                self.edge_factor
            ));
        }
        for (name, r) in [
            ("high_ratio", self.high_ratio),
            ("medium_ratio", self.medium_ratio),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return fail(format!("{name} must lie in [0,1], got {r}"));
            }
        }
        if self.high_ratio + self.medium_ratio > 1.0 + 1e-12 {
            return fail("high_ratio + medium_ratio exceeds 1".into());
        }
        if self.end_count == 0 || self.end_count >= self.node_count {
            return fail(format!(
                "end_count must lie in [1, node_count), got {}",
                self.end_count
            ));
        }
        let inner = self.node_count - self.end_count;
        // self-loops on every non-end node plus one back edge per ordered pair
        let achievable = inner + inner * (inner - 1) / 2;
        if self.loop_count > achievable {
            return fail(format!(
                "loop_count {} exceeds the {achievable} loops achievable",
                self.loop_count
            ));
        }
        Ok(())
    }
}

/// Generates a deterministic random model for `(params, seed)`.
///
/// Nodes are `n000, n001, ...` with `n000` the start and the last
/// `end_count` nodes the (sink) end nodes. A forward backbone makes every
/// node reachable and co-reachable; extra forward edges approach the target
/// edge count; loops are self-loops or short back edges between non-end
/// nodes. Priorities are assigned to a shuffled edge list by rounded ratio.
pub fn generate_random_model(
    params: &RandomModelParams,
    seed: u64,
) -> Result<SutModel, ModelError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.node_count;
    let inner = n - params.end_count;
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();

    for i in 1..n {
        let j = rng.gen_range(0..i.min(inner));
        pairs.insert((j, i));
    }
    for i in (0..inner).rev() {
        if !pairs.iter().any(|&(u, _)| u == i) {
            let k = rng.gen_range(i + 1..n);
            pairs.insert((i, k));
        }
    }

    let target = ((params.edge_factor * n as f64).round() as usize).max(n - 1);
    let forward_target = target.saturating_sub(params.loop_count);
    let mut free: Vec<(usize, usize)> = (0..inner)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|p| !pairs.contains(p))
        .collect();
    free.shuffle(&mut rng);
    for p in free {
        if pairs.len() >= forward_target {
            break;
        }
        pairs.insert(p);
    }

    let mut loop_slots: Vec<(usize, usize)> = (0..inner)
        .flat_map(|v| (0..=v).map(move |u| (v, u)))
        .collect();
    // Prefer short loops: self-loops and back edges spanning at most 3 nodes.
    loop_slots.shuffle(&mut rng);
    loop_slots.sort_by_key(|&(v, u)| (v - u).min(3));
    for slot in loop_slots.into_iter().take(params.loop_count) {
        pairs.insert(slot);
    }

    let mut edge_pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let total = edge_pairs.len();
    let high = (params.high_ratio * total as f64).round() as usize;
    let medium =
        ((params.medium_ratio * total as f64).round() as usize).min(total - high.min(total));
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut rng);
    let mut priorities = vec![Priority::Low; total];
    for (rank, &k) in order.iter().enumerate() {
        if rank < high {
            priorities[k] = Priority::High;
        } else if rank < high + medium {
            priorities[k] = Priority::Medium;
        }
    }

    let width = (n.max(total) - 1).to_string().len().max(3);
    let node_name = |i: usize| NodeId::new(format!("n{i:0width$}"));
    edge_pairs.sort();
    let edges = edge_pairs
        .iter()
        .zip(priorities)
        .enumerate()
        .map(|(k, (&(u, v), priority))| Edge {
            id: EdgeId::new(format!("e{k:0width$}")),
            source: node_name(u),
            target: node_name(v),
            priority,
        })
        .collect();
    SutModel::new(
        format!("random-{seed}"),
        (0..n).map(node_name).collect(),
        edges,
        node_name(0),
        (inner..n).map(node_name).collect(),
    )
}
