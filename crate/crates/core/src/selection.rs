//! Algorithm roster, candidate scoring, and selection of the optimal test
//! set: by one criterion, by the weighted optimality function, or by a
//! sequence of criteria.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::criteria::{
    compute_criteria, obligations_with_cap, priority_edges, verify_obligations, CoverageVerdict,
    CriteriaVector, Criterion, Direction, Obligations,
};
use crate::generators::{bf_generate, pg_generate, sc_generate};
use crate::generators::{pct_generate, ppt_generate, rsc_generate_with_cap, AlgorithmId, TestSet};
use crate::model::{to_plain_graph, ModelError, SutModel};
use crate::requirements::{
    build_requirements_with_cap, Conversion, CoverageSpec, Intensity, PriorityLevel,
    RequirementSet, DEFAULT_PRIME_CAP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelectionError {
    #[error("no candidates to select from")]
    NoCandidates,
    #[error("invalid optimality weights: {0}")]
    InvalidWeights(String),
    #[error("criteria sequence is empty")]
    EmptySequence,
    #[error("cannot parse selection `{0}`")]
    Parse(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("no candidate produced a valid test set: {0}")]
    NoViableCandidate(String),
}

/// Weights of the optimality function. Each lies in `[0, 1]` and they sum
/// to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub t_count: f64,
    pub edges: f64,
    pub uedges: f64,
}

impl Weights {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(t_count: f64, edges: f64, uedges: f64) -> Result<Self, SelectionError> {
        for w in [t_count, edges, uedges] {
            if !(0.0..=1.0).contains(&w) {
                return Err(SelectionError::InvalidWeights(format!(
                    "weight {w} outside [0, 1]"
                )));
            }
        }
        let sum = t_count + edges + uedges;
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(SelectionError::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self {
            t_count,
            edges,
            uedges,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OptimalitySpec {
    Single(Criterion),
    Function(Weights),
    Sequence(Vec<Criterion>),
}

impl fmt::Display for OptimalitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimalitySpec::Single(c) => write!(f, "single:{c}"),
            OptimalitySpec::Function(w) => write!(f, "opt:{},{},{}", w.t_count, w.edges, w.uedges),
            OptimalitySpec::Sequence(cs) => {
                let names: Vec<&str> = cs.iter().map(|c| c.name()).collect();
                write!(f, "seq:{}", names.join(","))
            }
        }
    }
}

impl FromStr for OptimalitySpec {
    type Err = SelectionError;

    /// `single:<name>`, `opt:<w1>,<w2>,<w3>` or `seq:<name>,<name>,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = || SelectionError::Parse(s.to_string());
        let (mode, rest) = s.split_once(':').ok_or_else(parse_err)?;
        match mode {
            "single" => rest
                .parse::<Criterion>()
                .map(OptimalitySpec::Single)
                .map_err(|_| parse_err()),
            "opt" => {
                let ws: Vec<f64> = rest
                    .split(',')
                    .map(|w| w.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| parse_err())?;
                match ws[..] {
                    [a, b, c] => Ok(OptimalitySpec::Function(Weights::new(a, b, c)?)),
                    _ => Err(parse_err()),
                }
            }
            "seq" => {
                let cs: Vec<Criterion> = rest
                    .split(',')
                    .map(|c| c.trim().parse::<Criterion>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| parse_err())?;
                Ok(OptimalitySpec::Sequence(cs))
            }
            _ => Err(parse_err()),
        }
    }
}

/// An algorithm together with the requirement conversion it runs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variant {
    pub algorithm: AlgorithmId,
    pub conversion: Conversion,
}

impl Variant {
    pub fn new(algorithm: AlgorithmId, conversion: Conversion) -> Self {
        Self {
            algorithm,
            conversion,
        }
    }

    /// Short column label, e.g. `PPT`, `BF-a`, `SC-s`.
    pub fn label(self) -> String {
        match self.conversion {
            Conversion::Atomic => format!("{}-a", self.algorithm),
            Conversion::Sequence => format!("{}-s", self.algorithm),
            Conversion::NotApplicable => self.algorithm.to_string(),
        }
    }

    /// Position in the canonical order PPT, RSC, BF-a, BF-s, SC-a, SC-s,
    /// PG-a, PG-s, PCT.
    pub fn canonical_rank(self) -> usize {
        let alg = match self.algorithm {
            AlgorithmId::Ppt => 0,
            AlgorithmId::Rsc => 1,
            AlgorithmId::Bf => 2,
            AlgorithmId::Sc => 3,
            AlgorithmId::Pg => 4,
            AlgorithmId::Pct => 5,
        };
        let conv = match self.conversion {
            Conversion::Atomic | Conversion::NotApplicable => 0,
            Conversion::Sequence => 1,
        };
        alg * 2 + conv
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The algorithms that can produce a test set for a coverage configuration,
/// in canonical order.
pub fn select_algorithms(cov: CoverageSpec) -> Vec<Variant> {
    use AlgorithmId::*;
    use Conversion::*;
    let reduced = cov.pl != PriorityLevel::None;
    let list: Vec<(AlgorithmId, Conversion)> = match (cov.intensity, reduced) {
        (Intensity::Edge, true) => vec![
            (Ppt, NotApplicable),
            (Rsc, NotApplicable),
            (Bf, Atomic),
            (Bf, Sequence),
            (Sc, Atomic),
            (Sc, Sequence),
            (Pg, Atomic),
            (Pg, Sequence),
        ],
        (Intensity::Edge, false) => vec![(Pct, NotApplicable)],
        (Intensity::EdgePair, true) => vec![(Ppt, NotApplicable), (Rsc, NotApplicable)],
        (Intensity::Tdl(_), true) => vec![(Ppt, NotApplicable)],
        (Intensity::EdgePair | Intensity::Tdl(_), false) => vec![
            (Bf, NotApplicable),
            (Sc, NotApplicable),
            (Pg, NotApplicable),
            (Pct, NotApplicable),
        ],
        (Intensity::PrimePath, true) => vec![(Rsc, NotApplicable)],
        (Intensity::PrimePath, false) => vec![
            (Bf, NotApplicable),
            (Sc, NotApplicable),
            (Pg, NotApplicable),
        ],
    };
    list.into_iter().map(|(a, c)| Variant::new(a, c)).collect()
}

fn better(dir: Direction, a: f64, b: f64) -> bool {
    match dir {
        Direction::Minimize => a < b,
        Direction::Maximize => a > b,
    }
}

/// Indices (into `pool`) of the candidates with the best value of `c`.
fn best_by(c: Criterion, vectors: &[CriteriaVector], pool: &[usize]) -> Vec<usize> {
    let dir = c.direction();
    let mut best: Option<f64> = None;
    for &i in pool {
        let v = vectors[i].get(c);
        if best.is_none_or(|b| better(dir, v, b)) {
            best = Some(v);
        }
    }
    pool.iter()
        .copied()
        .filter(|&i| Some(vectors[i].get(c)) == best)
        .collect()
}

/// Every candidate achieving the best value of one criterion.
pub fn select_single(
    c: Criterion,
    vectors: &[CriteriaVector],
) -> Result<Vec<usize>, SelectionError> {
    if vectors.is_empty() {
        return Err(SelectionError::NoCandidates);
    }
    let all: Vec<usize> = (0..vectors.len()).collect();
    Ok(best_by(c, vectors, &all))
}

/// Scores `o(T_x)` for every candidate and the candidates with the highest
/// score. Each term compares a candidate to the mean over all candidates.
pub fn optimality_function(
    w: &Weights,
    vectors: &[CriteriaVector],
) -> Result<(Vec<f64>, Vec<usize>), SelectionError> {
    if vectors.is_empty() {
        return Err(SelectionError::NoCandidates);
    }
    let w = Weights::new(w.t_count, w.edges, w.uedges)?;
    let m = vectors.len() as f64;
    // integer sums keep the means independent of candidate order
    let mean = |f: fn(&CriteriaVector) -> usize| vectors.iter().map(f).sum::<usize>() as f64 / m;
    let mean_t = mean(|v| v.t_count);
    let mean_e = mean(|v| v.edges_total);
    let mean_u = mean(|v| v.uedges);
    let scores: Vec<f64> = vectors
        .iter()
        .map(|v| {
            w.t_count * (1.0 - v.t_count as f64 / mean_t)
                + w.edges * (1.0 - v.edges_total as f64 / mean_e)
                + w.uedges * (1.0 - v.uedges as f64 / mean_u)
        })
        .collect();
    let top = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let winners = (0..scores.len()).filter(|&i| scores[i] == top).collect();
    Ok((scores, winners))
}

/// Filters by the first criterion, breaks ties with the second, and so on.
pub fn sequence_select(
    criteria: &[Criterion],
    vectors: &[CriteriaVector],
) -> Result<Vec<usize>, SelectionError> {
    if criteria.is_empty() {
        return Err(SelectionError::EmptySequence);
    }
    if vectors.is_empty() {
        return Err(SelectionError::NoCandidates);
    }
    let mut pool: Vec<usize> = (0..vectors.len()).collect();
    for &c in criteria {
        if pool.len() == 1 {
            break;
        }
        pool = best_by(c, vectors, &pool);
    }
    Ok(pool)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Upper bound on simple paths enumerated for prime paths.
    pub prime_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            prime_cap: DEFAULT_PRIME_CAP,
        }
    }
}

/// A test set that was generated, scored and checked.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluated {
    pub test_set: TestSet,
    pub criteria: CriteriaVector,
    pub coverage: CoverageVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateResult {
    pub variant: Variant,
    /// The evaluated test set, or why the algorithm produced none.
    pub outcome: Result<Evaluated, String>,
    pub opt_score: Option<f64>,
}

impl CandidateResult {
    pub fn evaluated(&self) -> Option<&Evaluated> {
        self.outcome.as_ref().ok()
    }

    /// Produced a test set that meets its coverage obligations.
    pub fn is_viable(&self) -> bool {
        self.evaluated().is_some_and(|e| e.coverage.satisfied)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub model_name: String,
    pub coverage: CoverageSpec,
    pub optimality: OptimalitySpec,
    pub candidates: Vec<CandidateResult>,
    /// Candidate indices sharing the best value, in canonical order.
    pub winners: Vec<usize>,
    pub selected: usize,
}

impl ComparisonReport {
    pub fn selected(&self) -> &CandidateResult {
        &self.candidates[self.selected]
    }

    pub fn selected_test_set(&self) -> &TestSet {
        &self
            .selected()
            .evaluated()
            .expect("the selected candidate is viable")
            .test_set
    }
}

/// Coverage obligations a variant is checked against. RSC only promises the
/// priority edges; every other variant is checked against the reference
/// obligations of the coverage level.
pub fn variant_obligations(
    m: &SutModel,
    variant: Variant,
    cov: CoverageSpec,
    prime_cap: usize,
) -> Result<Obligations, String> {
    if variant.algorithm == AlgorithmId::Rsc {
        return Ok(Obligations::Edges(priority_edges(m, cov.pl)));
    }
    obligations_with_cap(m, cov.intensity, cov.pl, prime_cap).map_err(|e| e.to_string())
}

/// Runs every algorithm suitable for `cov`, scores the test sets and selects
/// the optimal one.
pub fn run_pipeline(
    m: &SutModel,
    cov: CoverageSpec,
    opt: &OptimalitySpec,
) -> Result<ComparisonReport, SelectionError> {
    run_pipeline_with(m, cov, opt, &PipelineConfig::default())
}

pub fn run_pipeline_with(
    m: &SutModel,
    cov: CoverageSpec,
    opt: &OptimalitySpec,
    config: &PipelineConfig,
) -> Result<ComparisonReport, SelectionError> {
    let g = to_plain_graph(m)?;
    let roster = select_algorithms(cov);

    let mut requirement_sets: HashMap<Conversion, Result<RequirementSet, String>> = HashMap::new();
    let mut obligation_cache: HashMap<bool, Result<Obligations, String>> = HashMap::new();
    let depth = cov.intensity.depth();

    let mut candidates = Vec::with_capacity(roster.len());
    for variant in roster {
        let generated: Result<TestSet, String> = match variant.algorithm {
            AlgorithmId::Ppt => ppt_generate(m, depth.expect("PPT runs at TDL levels"), cov.pl)
                .map_err(|e| e.to_string()),
            AlgorithmId::Rsc => {
                rsc_generate_with_cap(m, &g, cov.pl, config.prime_cap).map_err(|e| e.to_string())
            }
            AlgorithmId::Pct => {
                pct_generate(m, depth.expect("PCT runs at TDL levels")).map_err(|e| e.to_string())
            }
            AlgorithmId::Bf | AlgorithmId::Sc | AlgorithmId::Pg => {
                let reqs = requirement_sets
                    .entry(variant.conversion)
                    .or_insert_with(|| {
                        build_requirements_with_cap(m, cov, variant.conversion, config.prime_cap)
                            .map_err(|e| e.to_string())
                    });
                match reqs {
                    Ok(r) => match variant.algorithm {
                        AlgorithmId::Bf => bf_generate(&g, r),
                        AlgorithmId::Sc => sc_generate(&g, r),
                        _ => pg_generate(&g, r),
                    }
                    .map_err(|e| e.to_string()),
                    Err(e) => Err(e.clone()),
                }
            }
        };

        let outcome = generated.and_then(|test_set| {
            let criteria = compute_criteria(m, &test_set).map_err(|e| e.to_string())?;
            let obligations = obligation_cache
                .entry(variant.algorithm == AlgorithmId::Rsc)
                .or_insert_with(|| variant_obligations(m, variant, cov, config.prime_cap))
                .clone()?;
            let coverage = verify_obligations(m, &test_set, &obligations);
            Ok(Evaluated {
                test_set,
                criteria,
                coverage,
            })
        });
        candidates.push(CandidateResult {
            variant,
            outcome,
            opt_score: None,
        });
    }

    let viable: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].is_viable())
        .collect();
    if viable.is_empty() {
        let reasons: Vec<String> = candidates
            .iter()
            .map(|c| match &c.outcome {
                Err(e) => format!("{}: {e}", c.variant),
                Ok(_) => format!("{}: coverage not satisfied", c.variant),
            })
            .collect();
        return Err(SelectionError::NoViableCandidate(reasons.join("; ")));
    }
    let vectors: Vec<CriteriaVector> = viable
        .iter()
        .map(|&i| candidates[i].evaluated().expect("viable").criteria)
        .collect();

    let local = match opt {
        OptimalitySpec::Single(c) => select_single(*c, &vectors)?,
        OptimalitySpec::Sequence(cs) => sequence_select(cs, &vectors)?,
        OptimalitySpec::Function(w) => {
            let (scores, winners) = optimality_function(w, &vectors)?;
            for (&i, s) in viable.iter().zip(scores) {
                candidates[i].opt_score = Some(s);
            }
            winners
        }
    };
    let winners: Vec<usize> = local.into_iter().map(|k| viable[k]).collect();
    let selected = winners[0];
    Ok(ComparisonReport {
        model_name: m.name().to_string(),
        coverage: cov,
        optimality: opt.clone(),
        candidates,
        winners,
        selected,
    })
}
