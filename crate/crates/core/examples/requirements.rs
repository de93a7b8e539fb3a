//! Turn edge priorities and coverage levels into test requirements.

use pathgen::model::{parse_model, to_plain_graph};
use pathgen::requirements::{
    atomic_requirements, edge_pair_requirements, prime_paths, sequence_requirements,
    tdl_requirements, PriorityLevel, RequirementSet,
};

fn show(label: &str, r: &RequirementSet) {
    println!("{label}: {} requirements", r.len());
    for p in r.paths().iter().take(6) {
        println!("    {p}");
    }
    if r.len() > 6 {
        println!("    ...");
    }
}

fn main() {
    let m = parse_model(include_str!("models/checkout.json")).unwrap();

    // one requirement per priority edge vs. priority edges chained into paths
    show(
        "atomic, pl=high",
        &atomic_requirements(&m, PriorityLevel::High).unwrap(),
    );
    show(
        "sequence, pl=high",
        &sequence_requirements(&m, PriorityLevel::High).unwrap(),
    );
    show(
        "sequence, pl=medium",
        &sequence_requirements(&m, PriorityLevel::Medium).unwrap(),
    );

    show("edge-pair", &edge_pair_requirements(&m));
    show("tdl:3", &tdl_requirements(&m, 3).unwrap());

    let g = to_plain_graph(&m).unwrap();
    show("prime paths", &prime_paths(&g).unwrap());
}
