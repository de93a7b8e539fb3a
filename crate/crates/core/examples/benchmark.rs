//! Seeded random models run through the pipeline, averaged per algorithm.
//!
//!     cargo run --release --example benchmark -- 50 7

use pathgen::cli::{run_benchmark, sample_params, RunConfig};
use pathgen::model::{generate_random_model, validate_model};
use pathgen::requirements::{CoverageSpec, Intensity, PriorityLevel};
use pathgen::selection::PipelineConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1);
    let instances: usize = args
        .next()
        .map_or(20, |s| s.parse().expect("instance count"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    // what one sampled instance looks like
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = sample_params(&mut rng);
    let m = generate_random_model(&params, 1).unwrap();
    println!("{params:?}");
    println!(
        "-> {} nodes, {} edges, valid={}",
        m.nodes().len(),
        m.edges().len(),
        validate_model(&m).ok
    );

    let cfg = RunConfig {
        coverage: CoverageSpec::new(Intensity::Edge, PriorityLevel::High),
        optimality: "seq:tcount,edges,uedges".parse().unwrap(),
        // not written to; run_benchmark only computes
        out_dir: std::env::temp_dir(),
        pipeline: PipelineConfig::default(),
    };
    let outcome = run_benchmark(instances, seed, &cfg).unwrap();

    let mut wins = std::collections::BTreeMap::new();
    for inst in &outcome.instances {
        if let Ok(r) = &inst.result {
            *wins.entry(r.selected().variant.label()).or_insert(0) += 1;
        }
    }
    print!("{}", outcome.averages);
    println!("selected: {wins:?}");
}
