//! Desk models and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use pathgen::generators::TestSet;
use pathgen::model::{validate_model, ModelBuilder, Priority, SutModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type NodePath = Vec<String>;

pub fn m1() -> SutModel {
    ModelBuilder::new("M1")
        .nodes(["s", "a", "b", "t"])
        .start("s")
        .end("t")
        .edge("e1", "s", "a", Priority::High)
        .edge("e2", "s", "b", Priority::Low)
        .edge("e3", "a", "t", Priority::High)
        .edge("e4", "b", "t", Priority::Medium)
        .build()
        .unwrap()
}

pub fn m2() -> SutModel {
    ModelBuilder::new("M2")
        .nodes(["s", "a", "t"])
        .start("s")
        .end("t")
        .edge("f1", "s", "a", Priority::Low)
        .edge("f2", "a", "a", Priority::High)
        .edge("f3", "a", "t", Priority::Low)
        .build()
        .unwrap()
}

pub fn p(s: &str) -> NodePath {
    s.split("->").map(str::to_string).collect()
}

pub fn set(paths: &[&str]) -> BTreeSet<NodePath> {
    paths.iter().map(|s| p(s)).collect()
}

pub fn listing(ts: &TestSet) -> BTreeSet<NodePath> {
    ts.paths()
        .iter()
        .map(|tp| tp.nodes().iter().map(|n| n.as_str().to_string()).collect())
        .collect()
}

/// Random digraph on `2..=max_nodes` nodes with self-loops allowed, kept only
/// when every node is reachable from `n0` and reaches the last node.
pub fn random_small_graph(rng: &mut ChaCha8Rng, max_nodes: usize, name: &str) -> SutModel {
    loop {
        let n = rng.gen_range(2..=max_nodes);
        let density: f64 = rng.gen_range(0.12..0.55);
        let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let mut b = ModelBuilder::new(name)
            .nodes(names.iter().map(String::as_str))
            .start("n0")
            .end(&names[n - 1]);
        let mut k = 0;
        for u in 0..n {
            for v in 0..n {
                let pr = if v == u + 1 { 0.8 } else { density };
                if rng.gen_bool(pr) {
                    let prio = match rng.gen_range(0..4) {
                        0 => Priority::High,
                        1 => Priority::Medium,
                        _ => Priority::Low,
                    };
                    b = b.edge(&format!("e{k:03}"), &names[u], &names[v], prio);
                    k += 1;
                }
            }
        }
        if k == 0 {
            continue;
        }
        if let Ok(m) = b.build() {
            if validate_model(&m).ok {
                return m;
            }
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn successors(m: &SutModel, node: &str) -> Vec<String> {
    let mut out: Vec<String> = m
        .edges()
        .iter()
        .filter(|e| e.source.as_str() == node)
        .map(|e| e.target.as_str().to_string())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every simple path with at least one edge, including simple cycles.
pub fn all_simple_paths(m: &SutModel) -> Vec<NodePath> {
    fn grow(m: &SutModel, path: &mut NodePath, out: &mut Vec<NodePath>) {
        for v in successors(m, path.last().unwrap()) {
            if v == path[0] {
                let mut cyc = path.clone();
                cyc.push(v);
                out.push(cyc);
            } else if !path.contains(&v) {
                path.push(v);
                out.push(path.clone());
                grow(m, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for n in m.nodes() {
        grow(m, &mut vec![n.as_str().to_string()], &mut out);
    }
    out
}

/// Simple paths that are not a proper contiguous sub-path of another one.
pub fn brute_prime_paths(m: &SutModel) -> BTreeSet<NodePath> {
    let all = all_simple_paths(m);
    let mut dominated: HashSet<NodePath> = HashSet::new();
    for q in &all {
        for len in 2..q.len() {
            for w in q.windows(len) {
                dominated.insert(w.to_vec());
            }
        }
    }
    all.into_iter().filter(|q| !dominated.contains(q)).collect()
}

/// All walks with exactly `edges` edges.
pub fn all_walks(m: &SutModel, edges: usize) -> Vec<NodePath> {
    let mut frontier: Vec<NodePath> = m
        .nodes()
        .iter()
        .map(|n| vec![n.as_str().to_string()])
        .collect();
    for _ in 0..edges {
        frontier = frontier
            .into_iter()
            .flat_map(|w| {
                successors(m, w.last().unwrap()).into_iter().map(move |v| {
                    let mut x = w.clone();
                    x.push(v);
                    x
                })
            })
            .collect();
    }
    frontier
}

pub fn edge_priority(m: &SutModel, u: &str, v: &str) -> Option<Priority> {
    m.edges()
        .iter()
        .find(|e| e.source.as_str() == u && e.target.as_str() == v)
        .map(|e| e.priority)
}

pub fn contains_window(path: &[String], sub: &[String]) -> bool {
    path.windows(sub.len()).any(|w| w == sub)
}

/// Obligations not appearing as a contiguous piece of any test path.
pub fn uncovered(ts: &TestSet, obligations: &[NodePath]) -> Vec<NodePath> {
    let paths = listing(ts);
    obligations
        .iter()
        .filter(|o| !paths.iter().any(|tp| contains_window(tp, o)))
        .cloned()
        .collect()
}

pub fn node_ids(s: &str) -> Vec<pathgen::model::NodeId> {
    s.split("->").map(pathgen::model::NodeId::new).collect()
}
