//! Run each test set generator on the same model and compare their output.

use pathgen::generators::{
    bf_generate, pct_generate, pg_generate, ppt_generate, rsc_generate, sc_generate, TestSet,
};
use pathgen::model::{parse_model, to_plain_graph};
use pathgen::requirements::{
    build_requirements, Conversion, CoverageSpec, Intensity, PriorityLevel,
};

fn show(label: &str, ts: &TestSet) {
    let edges: usize = ts.paths().iter().map(|p| p.edge_count()).sum();
    println!("{label:<8} |T|={} edges={edges}", ts.len());
    for p in ts.paths() {
        println!("    {p}");
    }
}

fn main() {
    let m = parse_model(include_str!("models/checkout.json")).unwrap();
    let g = to_plain_graph(&m).unwrap();
    let cov = CoverageSpec::new(Intensity::Edge, PriorityLevel::High);

    for conversion in [Conversion::Atomic, Conversion::Sequence] {
        let r = build_requirements(&m, cov, conversion).unwrap();
        let tag = &conversion.as_str()[..1];
        show(&format!("BF-{tag}"), &bf_generate(&g, &r).unwrap());
        show(&format!("SC-{tag}"), &sc_generate(&g, &r).unwrap());
        show(&format!("PG-{tag}"), &pg_generate(&g, &r).unwrap());
    }

    // these two take the priority level directly
    show("PPT", &ppt_generate(&m, 1, PriorityLevel::High).unwrap());
    match rsc_generate(&m, &g, PriorityLevel::High) {
        Ok(ts) => show("RSC", &ts),
        Err(e) => println!("RSC      {e}"),
    }

    // plain coverage, no priorities
    show("PCT", &pct_generate(&m, 2).unwrap());
}
