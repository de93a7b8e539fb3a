mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pathgen::report::parse_csv;

fn pathgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathgen"))
        .args(args)
        .env_remove("PATHGEN_PRIME_CAP")
        .output()
        .expect("binary runs")
}

fn models_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/models")
}

fn model(name: &str) -> String {
    models_dir().join(name).to_string_lossy().into_owned()
}

fn generate(model_file: &str, cov: &str, pl: &str, select: &str, out: &Path) -> Output {
    pathgen(&[
        "generate",
        "--model",
        model_file,
        "--coverage",
        cov,
        "--pl",
        pl,
        "--select",
        select,
        "--out",
        out.to_str().unwrap(),
    ])
}

#[test]
fn m1_edge_high_lists_eight_candidates_and_winner() {
    let tmp = tempfile::tempdir().unwrap();
    let out = generate(
        &model("m1.json"),
        "edge",
        "high",
        "single:tcount",
        tmp.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let text = fs::read_to_string(tmp.path().join("report.csv")).unwrap();
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows.iter().filter(|r| !r.is_summary()).count(), 8);
    assert!(rows.iter().all(|r| r.opt_score.is_none()));
    let winner = rows.last().unwrap();
    assert_eq!(
        (winner.algorithm.as_str(), winner.conversion.as_str()),
        ("SELECTED", "PPT:not-applicable")
    );
    assert_eq!(
        fs::read_to_string(tmp.path().join("selected_paths.txt")).unwrap(),
        "s->a->t\n"
    );
}

#[test]
fn m1_edge_pair_medium_with_weights() {
    let tmp = tempfile::tempdir().unwrap();
    let out = generate(
        &model("m1.json"),
        "edge-pair",
        "medium",
        "opt:0.3,0.4,0.3",
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&fs::read_to_string(tmp.path().join("report.csv")).unwrap()).unwrap();
    let algs: Vec<&str> = rows.iter().map(|r| r.algorithm.as_str()).collect();
    assert_eq!(algs, ["PPT", "RSC", "SELECTED"]);
    assert!(rows.iter().all(|r| r.opt_score.is_some()));
}

#[test]
fn missing_model_file_exits_1_and_writes_nothing() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = generate(
        &model("no-such.json"),
        "edge",
        "high",
        "single:tcount",
        &out_dir,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_dir.exists());
}

#[test]
fn bad_flags_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    for (cov, pl, sel) in [
        ("edges", "high", "single:tcount"),
        ("edge", "urgent", "single:tcount"),
        ("edge", "high", "opt:0.5,0.5,0.1"),
        ("edge", "high", "seq:tcount,speed"),
    ] {
        let out = generate(&model("m1.json"), cov, pl, sel, tmp.path());
        assert_eq!(out.status.code(), Some(2), "{cov} {pl} {sel}");
    }
    assert_eq!(pathgen(&["generate"]).status.code(), Some(2));
}

#[test]
fn invalid_model_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let out = generate(
        &model("broken.json"),
        "edge",
        "high",
        "single:tcount",
        &tmp.path().join("o"),
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("unreachable-node") && stderr.contains("cannot-reach-end"),
        "{stderr}"
    );

    let junk = tmp.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    let out = generate(
        junk.to_str().unwrap(),
        "edge",
        "high",
        "single:tcount",
        &tmp.path().join("o"),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn pipeline_failures_exit_4() {
    let tmp = tempfile::tempdir().unwrap();
    let flat = tmp.path().join("flat.json");
    let m = pathgen::model::ModelBuilder::new("flat")
        .nodes(["s", "t"])
        .start("s")
        .end("t")
        .edge("e", "s", "t", pathgen::model::Priority::Low)
        .build()
        .unwrap();
    fs::write(&flat, m.to_json()).unwrap();
    let out = generate(
        flat.to_str().unwrap(),
        "edge",
        "high",
        "single:tcount",
        &tmp.path().join("o"),
    );
    assert_eq!(out.status.code(), Some(4));

    // a prime-path cap of one path cannot hold the checkout model's prime paths
    let out = Command::new(env!("CARGO_BIN_EXE_pathgen"))
        .args([
            "generate",
            "--model",
            &model("checkout.json"),
            "--coverage",
            "prime-path",
            "--pl",
            "none",
        ])
        .args(["--out", tmp.path().join("o").to_str().unwrap()])
        .env("PATHGEN_PRIME_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn benchmark_writes_instances_and_averages() {
    let tmp = tempfile::tempdir().unwrap();
    let out = pathgen(&[
        "benchmark",
        "--instances",
        "3",
        "--seed",
        "7",
        "--coverage",
        "edge",
        "--pl",
        "high",
        "--select",
        "seq:tcount,edges,uedges",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut names: Vec<String> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "averages.csv",
            "instance_000.csv",
            "instance_001.csv",
            "instance_002.csv"
        ]
    );
}

#[test]
fn single_instance_averages_equal_its_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = pathgen(&[
        "benchmark",
        "--instances",
        "1",
        "--seed",
        "11",
        "--coverage",
        "edge-pair",
        "--pl",
        "high",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows =
        parse_csv(&fs::read_to_string(tmp.path().join("instance_000.csv")).unwrap()).unwrap();
    let averages = fs::read_to_string(tmp.path().join("averages.csv")).unwrap();
    let table: Vec<Vec<String>> = averages
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(table[0], ["criterion", "PPT", "RSC"]);
    for (col, row) in rows.iter().filter(|r| !r.is_summary()).enumerate() {
        let Some(v) = row.criteria() else { continue };
        for (k, c) in pathgen::criteria::Criterion::ALL.iter().enumerate() {
            let avg: f64 = table[k + 1][col + 1].parse().unwrap();
            assert!(
                (avg - v.get(*c)).abs() < 1e-4,
                "{c}: {avg} vs {}",
                v.get(*c)
            );
        }
    }
}

#[test]
fn benchmark_rejects_zero_instances() {
    let tmp = tempfile::tempdir().unwrap();
    let out = pathgen(&[
        "benchmark",
        "--instances",
        "0",
        "--coverage",
        "edge",
        "--pl",
        "high",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
