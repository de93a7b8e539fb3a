//! End to end: every suitable algorithm, scored, with the CSV report and the
//! selected test set.

use pathgen::model::parse_model;
use pathgen::report::write_csv;
use pathgen::requirements::{CoverageSpec, Intensity, PriorityLevel};
use pathgen::selection::{run_pipeline, OptimalitySpec};

fn main() {
    let m = parse_model(include_str!("models/checkout.json")).unwrap();
    let opt: OptimalitySpec = "opt:0.3,0.4,0.3".parse().unwrap();

    for cov in [
        CoverageSpec::new(Intensity::Edge, PriorityLevel::High),
        CoverageSpec::new(Intensity::EdgePair, PriorityLevel::Medium),
        CoverageSpec::new(Intensity::PrimePath, PriorityLevel::None),
    ] {
        let report = run_pipeline(&m, cov, &opt).unwrap();
        println!("## {cov}");
        print!("{}", write_csv(&report));
        for c in report.candidates.iter().filter(|c| !c.is_viable()) {
            println!("# {} failed: {:?}", c.variant, c.outcome.as_ref().err());
        }
        println!("# selected {}:", report.selected().variant);
        print!("{}", report.selected_test_set().to_listing());
        println!();
    }
}
