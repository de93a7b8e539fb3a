//! The three ways to pick a winner among candidate test sets.

use pathgen::criteria::Criterion;
use pathgen::model::parse_model;
use pathgen::requirements::{CoverageSpec, Intensity, PriorityLevel};
use pathgen::selection::{run_pipeline, OptimalitySpec, Weights};

fn main() {
    let m = parse_model(include_str!("models/checkout.json")).unwrap();
    let cov = CoverageSpec::new(Intensity::Edge, PriorityLevel::Medium);

    let modes = [
        OptimalitySpec::Single(Criterion::TCount),
        OptimalitySpec::Single(Criterion::UeM),
        OptimalitySpec::Function(Weights::new(0.3, 0.4, 0.3).unwrap()),
        OptimalitySpec::Sequence(vec![Criterion::TCount, Criterion::Edges, Criterion::Uedges]),
        "seq:nodes,e_h".parse().unwrap(),
    ];
    for opt in &modes {
        let report = run_pipeline(&m, cov, opt).unwrap();
        let winners: Vec<String> = report
            .winners
            .iter()
            .map(|&i| report.candidates[i].variant.label())
            .collect();
        println!("{opt:<24} winners: {}", winners.join(" "));
        if matches!(opt, OptimalitySpec::Function(_)) {
            for c in &report.candidates {
                println!(
                    "    {:<5} o = {:+.4}",
                    c.variant.label(),
                    c.opt_score.unwrap_or(f64::NAN)
                );
            }
        }
    }

    // weights must sum to one
    println!("{}", Weights::new(0.5, 0.5, 0.1).unwrap_err());
}
