//! CSV comparison reports and the averaged benchmark table.

use serde::Deserialize;

use crate::criteria::{CriteriaVector, Criterion};
use crate::selection::{CandidateResult, ComparisonReport, Variant};

pub const CSV_HEADER: [&str; 20] = [
    "model",
    "algorithm",
    "conversion",
    "t_count",
    "edges",
    "edges_h",
    "edges_m",
    "uedges",
    "uedges_h",
    "uedges_m",
    "nodes",
    "unodes",
    "er",
    "e_h",
    "e_m",
    "ue_h",
    "ue_m",
    "opt_score",
    "coverage_ok",
    "selected",
];

/// Algorithm cell of the trailing row that repeats the selected candidate.
pub const SUMMARY_ALGORITHM: &str = "SELECTED";

fn ratio(v: f64) -> String {
    format!("{v:.4}")
}

fn criteria_cells(v: &CriteriaVector) -> Vec<String> {
    let counts = [
        v.t_count,
        v.edges_total,
        v.edges_high,
        v.edges_med,
        v.uedges,
        v.uedges_high,
        v.uedges_med,
        v.nodes_total,
        v.unodes,
    ];
    let ratios = [v.er, v.e_h, v.e_m, v.ue_h, v.ue_m];
    counts
        .iter()
        .map(|c| c.to_string())
        .chain(ratios.iter().map(|&r| ratio(r)))
        .collect()
}

fn candidate_record(
    model: &str,
    algorithm: String,
    conversion: String,
    c: &CandidateResult,
    selected: bool,
) -> Vec<String> {
    let mut row = vec![model.to_string(), algorithm, conversion];
    match c.evaluated() {
        Some(e) => row.extend(criteria_cells(&e.criteria)),
        None => row.extend(std::iter::repeat_n(String::new(), 14)),
    }
    row.push(c.opt_score.map(|s| format!("{s:.6}")).unwrap_or_default());
    row.push(if c.is_viable() { "1" } else { "0" }.to_string());
    row.push(if selected { "1" } else { "0" }.to_string());
    row
}

/// One row per candidate in canonical order, then a summary row for the
/// selected test set whose conversion cell reads `ALG:conversion`.
pub fn write_csv(report: &ComparisonReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (i, c) in report.candidates.iter().enumerate() {
        let row = candidate_record(
            &report.model_name,
            c.variant.algorithm.to_string(),
            c.variant.conversion.to_string(),
            c,
            i == report.selected,
        );
        w.write_record(&row).expect("in-memory write");
    }
    let sel = report.selected();
    let summary = candidate_record(
        &report.model_name,
        SUMMARY_ALGORITHM.to_string(),
        format!("{}:{}", sel.variant.algorithm, sel.variant.conversion),
        sel,
        true,
    );
    w.write_record(&summary).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// A parsed report row. Criteria cells are empty for failed candidates.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRow {
    pub model: String,
    pub algorithm: String,
    pub conversion: String,
    pub t_count: Option<usize>,
    pub edges: Option<usize>,
    pub edges_h: Option<usize>,
    pub edges_m: Option<usize>,
    pub uedges: Option<usize>,
    pub uedges_h: Option<usize>,
    pub uedges_m: Option<usize>,
    pub nodes: Option<usize>,
    pub unodes: Option<usize>,
    pub er: Option<f64>,
    pub e_h: Option<f64>,
    pub e_m: Option<f64>,
    pub ue_h: Option<f64>,
    pub ue_m: Option<f64>,
    pub opt_score: Option<f64>,
    pub coverage_ok: u8,
    pub selected: u8,
}

impl CsvRow {
    pub fn is_summary(&self) -> bool {
        self.algorithm == SUMMARY_ALGORITHM
    }

    pub fn criteria(&self) -> Option<CriteriaVector> {
        Some(CriteriaVector {
            t_count: self.t_count?,
            edges_total: self.edges?,
            edges_high: self.edges_h?,
            edges_med: self.edges_m?,
            uedges: self.uedges?,
            uedges_high: self.uedges_h?,
            uedges_med: self.uedges_m?,
            nodes_total: self.nodes?,
            unodes: self.unodes?,
            er: self.er?,
            e_h: self.e_h?,
            e_m: self.e_m?,
            ue_h: self.ue_h?,
            ue_m: self.ue_m?,
        })
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, csv::Error> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header_ok = r.headers()?.iter().eq(CSV_HEADER);
    if !header_ok {
        return Err(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            "unexpected report header",
        )));
    }
    r.deserialize().collect()
}

/// Mean of every criterion per variant over the reports in which that
/// variant produced a viable test set. Rows are criteria, columns variants.
pub fn averages_csv(columns: &[Variant], reports: &[ComparisonReport]) -> String {
    let mut sums = vec![[0.0f64; 14]; columns.len()];
    let mut counts = vec![0usize; columns.len()];
    for report in reports {
        for c in &report.candidates {
            let Some(col) = columns.iter().position(|v| *v == c.variant) else {
                continue;
            };
            if !c.is_viable() {
                continue;
            }
            let v = &c.evaluated().expect("viable").criteria;
            for (k, crit) in Criterion::ALL.iter().enumerate() {
                sums[col][k] += v.get(*crit);
            }
            counts[col] += 1;
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["criterion".to_string()];
    header.extend(columns.iter().map(|v| v.label()));
    w.write_record(&header).expect("in-memory write");
    for (k, crit) in Criterion::ALL.iter().enumerate() {
        let mut row = vec![crit.name().to_string()];
        for col in 0..columns.len() {
            row.push(if counts[col] == 0 {
                String::new()
            } else {
                ratio(sums[col][k] / counts[col] as f64)
            });
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
