//! Score a test set with the optimality criteria and check it against its
//! coverage obligations.

use pathgen::criteria::{compute_criteria, verify_coverage, Criterion};
use pathgen::generators::{ppt_generate, AlgorithmId, TestPath, TestSet};
use pathgen::model::parse_model;
use pathgen::requirements::{Conversion, Intensity, PriorityLevel};

fn main() {
    let m = parse_model(include_str!("models/checkout.json")).unwrap();
    let ts = ppt_generate(&m, 2, PriorityLevel::High).unwrap();

    let v = compute_criteria(&m, &ts).unwrap();
    for c in Criterion::ALL {
        println!("{:<9} {:>8.4}  ({:?})", c.name(), v.get(c), c.direction());
    }

    for (intensity, pl) in [
        (Intensity::Edge, PriorityLevel::High),
        (Intensity::EdgePair, PriorityLevel::High),
        (Intensity::EdgePair, PriorityLevel::None),
    ] {
        let verdict = verify_coverage(&m, &ts, intensity, pl).unwrap();
        println!(
            "{intensity} pl={pl}: satisfied={} missing={}",
            verdict.satisfied,
            verdict.missing.len()
        );
        for miss in verdict.missing.iter().take(3) {
            println!("    {miss}");
        }
    }

    // a hand-written test set
    let path = |p: &[&str]| TestPath::new(&m, p.iter().map(|s| (*s).into()).collect()).unwrap();
    let manual = TestSet::new(
        AlgorithmId::Bf,
        Conversion::NotApplicable,
        vec![path(&[
            "login", "catalog", "cart", "address", "payment", "confirm", "logout",
        ])],
    );
    let verdict = verify_coverage(&m, &manual, Intensity::Edge, PriorityLevel::High).unwrap();
    println!("happy path alone covers high edges: {}", verdict.satisfied);
}
