//! `generate` and `benchmark` commands.
//!
//! Exit codes: 0 success, 1 unreadable input or unwritable output,
//! 2 invalid configuration, 3 invalid model, 4 pipeline failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{
    generate_random_model, parse_model, validate_model, ModelError, RandomModelParams, SutModel,
};
use crate::report::{averages_csv, write_csv};
use crate::requirements::{CoverageSpec, Intensity, PriorityLevel, DEFAULT_PRIME_CAP};
use crate::selection::{
    run_pipeline_with, select_algorithms, ComparisonReport, OptimalitySpec, PipelineConfig,
    SelectionError,
};

pub const PRIME_CAP_ENV: &str = "PATHGEN_PRIME_CAP";
pub const REPORT_FILE: &str = "report.csv";
pub const SELECTED_PATHS_FILE: &str = "selected_paths.txt";
pub const AVERAGES_FILE: &str = "averages.csv";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error("pipeline failed: {0}")]
    Pipeline(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Model(_) => 3,
            CliError::Pipeline(_) => 4,
        }
    }
}

impl From<SelectionError> for CliError {
    fn from(e: SelectionError) -> Self {
        match e {
            SelectionError::Model(m) => CliError::Model(m.to_string()),
            SelectionError::InvalidWeights(_)
            | SelectionError::Parse(_)
            | SelectionError::EmptySequence => CliError::Config(e.to_string()),
            other => CliError::Pipeline(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pathgen",
    version,
    about = "Generate and compare path-based test sets for prioritized graph models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every suitable algorithm on one model and select the optimal test set.
    Generate(GenerateArgs),
    /// Run the pipeline over seeded random models and average the criteria.
    Benchmark(BenchmarkArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CoverageArgs {
    /// edge, edge-pair, tdl:<x> or prime-path
    #[arg(long)]
    pub coverage: String,
    /// high, medium or none
    #[arg(long)]
    pub pl: String,
    /// single:<criterion>, opt:<w1>,<w2>,<w3> or seq:<criterion>,...
    #[arg(long, default_value = "single:tcount")]
    pub select: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Model JSON file.
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub common: CoverageArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchmarkArgs {
    #[arg(long, default_value_t = 50)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: CoverageArgs,
}

/// Shared, already-validated run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub coverage: CoverageSpec,
    pub optimality: OptimalitySpec,
    pub out_dir: PathBuf,
    pub pipeline: PipelineConfig,
}

impl RunConfig {
    pub fn from_args(a: &CoverageArgs) -> Result<Self, CliError> {
        let intensity =
            Intensity::from_str(&a.coverage).map_err(|e| CliError::Config(e.to_string()))?;
        let pl = PriorityLevel::from_str(&a.pl).map_err(|e| CliError::Config(e.to_string()))?;
        let optimality = OptimalitySpec::from_str(&a.select).map_err(CliError::from)?;
        Ok(Self {
            coverage: CoverageSpec::new(intensity, pl),
            optimality,
            out_dir: a.out.clone(),
            pipeline: PipelineConfig {
                prime_cap: prime_cap_from_env()?,
            },
        })
    }
}

fn prime_cap_from_env() -> Result<usize, CliError> {
    match std::env::var(PRIME_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "{PRIME_CAP_ENV} must be a positive integer, got `{v}`"
                ))
            }),
        Err(_) => Ok(DEFAULT_PRIME_CAP),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn create_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
}

pub fn load_model(path: &Path) -> Result<SutModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let m = parse_model(&text).map_err(|e| CliError::Model(e.to_string()))?;
    let report = validate_model(&m);
    if !report.ok {
        return Err(CliError::Model(report.to_string()));
    }
    Ok(m)
}

/// Writes `report.csv` and `selected_paths.txt` into `cfg.out_dir`. Nothing
/// is written unless the pipeline succeeds.
pub fn run_generate_command(
    model_path: &Path,
    cfg: &RunConfig,
) -> Result<ComparisonReport, CliError> {
    let m = load_model(model_path)?;
    let report = run_pipeline_with(&m, cfg.coverage, &cfg.optimality, &cfg.pipeline)?;
    create_dir(&cfg.out_dir)?;
    write_file(&cfg.out_dir.join(REPORT_FILE), &write_csv(&report))?;
    write_file(
        &cfg.out_dir.join(SELECTED_PATHS_FILE),
        &report.selected_test_set().to_listing(),
    )?;
    Ok(report)
}

/// Random model shape: 7 to 52 nodes, about 1.05 to 1.55 edges per node,
/// 10-40% high and 5-35% medium edges, a few loops, one or two end nodes.
pub fn sample_params<R: Rng>(rng: &mut R) -> RandomModelParams {
    let node_count = rng.gen_range(7..=52);
    RandomModelParams {
        node_count,
        edge_factor: rng.gen_range(1.05..=1.55),
        high_ratio: rng.gen_range(0.10..=0.40),
        medium_ratio: rng.gen_range(0.05..=0.35),
        loop_count: rng.gen_range(0..=(node_count / 5).min(6)),
        end_count: rng.gen_range(1..=2),
    }
}

/// One benchmark instance: its model and the pipeline outcome.
#[derive(Debug, Clone)]
pub struct BenchmarkInstance {
    pub index: usize,
    pub model: SutModel,
    pub result: Result<ComparisonReport, String>,
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutcome {
    pub instances: Vec<BenchmarkInstance>,
    pub averages: String,
}

/// Builds the seeded models and runs the pipeline on each, in parallel
/// worker threads; results come back in instance order.
pub fn run_benchmark(
    instances: usize,
    seed: u64,
    cfg: &RunConfig,
) -> Result<BenchmarkOutcome, CliError> {
    if instances == 0 {
        return Err(CliError::Config("--instances must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut models = Vec::with_capacity(instances);
    for _ in 0..instances {
        let params = sample_params(&mut rng);
        let model_seed: u64 = rng.gen();
        let m = generate_random_model(&params, model_seed)
            .map_err(|e: ModelError| CliError::Config(e.to_string()))?;
        models.push(m);
    }

    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(instances);
    let mut slots: Vec<Option<Result<ComparisonReport, String>>> = vec![None; instances];
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let models = &models;
                s.spawn(move || {
                    (w..models.len())
                        .step_by(workers)
                        .map(|i| {
                            let r = run_pipeline_with(
                                &models[i],
                                cfg.coverage,
                                &cfg.optimality,
                                &cfg.pipeline,
                            );
                            (i, r.map_err(|e| e.to_string()))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("benchmark worker panicked") {
                slots[i] = Some(r);
            }
        }
    });

    let runs: Vec<BenchmarkInstance> = models
        .into_iter()
        .zip(slots)
        .enumerate()
        .map(|(index, (model, r))| BenchmarkInstance {
            index,
            model,
            result: r.expect("every instance ran"),
        })
        .collect();
    let ok: Vec<ComparisonReport> = runs
        .iter()
        .filter_map(|r| r.result.as_ref().ok().cloned())
        .collect();
    let averages = averages_csv(&select_algorithms(cfg.coverage), &ok);
    Ok(BenchmarkOutcome {
        instances: runs,
        averages,
    })
}

/// Writes `instance_NNN.csv` per model (and `instance_NNN.error` where the
/// pipeline failed) plus `averages.csv`.
pub fn run_benchmark_command(
    instances: usize,
    seed: u64,
    cfg: &RunConfig,
) -> Result<BenchmarkOutcome, CliError> {
    let outcome = run_benchmark(instances, seed, cfg)?;
    if outcome.instances.iter().all(|r| r.result.is_err()) {
        let first = outcome.instances[0]
            .result
            .as_ref()
            .err()
            .cloned()
            .unwrap_or_default();
        return Err(CliError::Pipeline(format!(
            "no instance produced a report; first error: {first}"
        )));
    }
    create_dir(&cfg.out_dir)?;
    for inst in &outcome.instances {
        match &inst.result {
            Ok(report) => write_file(
                &cfg.out_dir.join(format!("instance_{:03}.csv", inst.index)),
                &write_csv(report),
            )?,
            Err(e) => write_file(
                &cfg.out_dir
                    .join(format!("instance_{:03}.error", inst.index)),
                &format!("{e}\n"),
            )?,
        }
    }
    write_file(&cfg.out_dir.join(AVERAGES_FILE), &outcome.averages)?;
    Ok(outcome)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Generate(a) => RunConfig::from_args(&a.common).and_then(|cfg| {
            let report = run_generate_command(&a.model, &cfg)?;
            let sel = report.selected();
            println!(
                "{}: selected {} ({} test paths) out of {} candidates",
                report.model_name,
                sel.variant,
                report.selected_test_set().len(),
                report.candidates.len()
            );
            Ok(())
        }),
        Command::Benchmark(a) => RunConfig::from_args(&a.common).and_then(|cfg| {
            let outcome = run_benchmark_command(a.instances, a.seed, &cfg)?;
            let failed = outcome
                .instances
                .iter()
                .filter(|r| r.result.is_err())
                .count();
            println!(
                "{} instances, {} failed; averages written to {}",
                outcome.instances.len(),
                failed,
                cfg.out_dir.join(AVERAGES_FILE).display()
            );
            Ok(())
        }),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_params_are_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            assert!(sample_params(&mut rng).validate().is_ok());
        }
    }

    #[test]
    fn config_errors_map_to_exit_two() {
        let args = |cov: &str, pl: &str, sel: &str| CoverageArgs {
            coverage: cov.into(),
            pl: pl.into(),
            select: sel.into(),
            out: PathBuf::from("unused"),
        };
        for a in [
            args("edges", "high", "single:tcount"),
            args("edge", "low", "single:tcount"),
            args("edge", "high", "opt:0.5,0.5,0.5"),
            args("tdl:1", "high", "single:tcount"),
        ] {
            assert_eq!(RunConfig::from_args(&a).unwrap_err().exit_code(), 2);
        }
        assert!(RunConfig::from_args(&args("tdl:3", "none", "seq:tcount,edges")).is_ok());
    }
}
