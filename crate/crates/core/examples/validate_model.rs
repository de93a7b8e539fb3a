//! Parse model documents, report validation issues and convert a clean model
//! to a plain graph.
//!
//!     cargo run --example validate_model [path/to/model.json]

use pathgen::model::{parse_model, to_plain_graph, validate_model, ModelError, Priority};

fn check(label: &str, text: &str) {
    println!("== {label}");
    let m = match parse_model(text) {
        Ok(m) => m,
        Err(e) => {
            println!("  rejected: {e}");
            return;
        }
    };
    println!(
        "  {} nodes, {} edges ({} high, {} medium)",
        m.nodes().len(),
        m.edges().len(),
        m.count_priority(Priority::High),
        m.count_priority(Priority::Medium)
    );
    let report = validate_model(&m);
    for issue in &report.issues {
        println!(
            "  {:?} {}: {}",
            issue.severity,
            issue.code.as_str(),
            issue.message
        );
    }
    match to_plain_graph(&m) {
        Ok(g) => println!(
            "  plain graph ok: {} nodes, {} edges",
            g.node_count(),
            g.edge_count()
        ),
        Err(ModelError::Invalid(_)) => println!("  not convertible: model is invalid"),
        Err(e) => println!("  not convertible: {e}"),
    }
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable model file");
        check(&path, &text);
        return;
    }
    check("checkout", include_str!("models/checkout.json"));
    check("broken", include_str!("models/broken.json"));
    check(
        "unknown edge target",
        r#"{"name":"x","nodes":[{"id":"s"}],"startNode":"s","endNodes":["s"],
        "edges":[{"id":"e","source":"s","target":"nowhere"}]}"#,
    );
}
