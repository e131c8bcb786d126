//! Loaders for evaluation results.
//!
//! Two shapes are accepted:
//! - the bundled wide CSV mirroring the full results table (one row per
//!   model x benchmark, 24 split columns plus the NL baseline), and
//! - a long CSV or JSON-lines file with one [`EvaluationRecord`] per row.

use super::{EvalLevel, EvaluationRecord, StatsError};
use crate::dataset::{MetricFamily, Regime};
use thiserror::Error;

/// The full per-benchmark results table shipped with the crate.
pub const BUNDLED_RESULTS_CSV: &str = include_str!("../../data/benchmark_results.csv");

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

fn schema_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Schema {
        line,
        message: message.into(),
    }
}

const LEVELS: [EvalLevel; 6] = [
    EvalLevel::Min,
    EvalLevel::Low,
    EvalLevel::Mid,
    EvalLevel::High,
    EvalLevel::Max,
    EvalLevel::Ctrl,
];

const GROUPS: [(Regime, MetricFamily); 4] = [
    (Regime::SolutionDriven, MetricFamily::Cc),
    (Regime::SolutionDriven, MetricFamily::Lloc),
    (Regime::ProblemDriven, MetricFamily::Cc),
    (Regime::ProblemDriven, MetricFamily::Lloc),
];

fn regime_prefix(regime: Regime) -> &'static str {
    match regime {
        Regime::SolutionDriven => "codenet",
        Regime::ProblemDriven => "instruct",
    }
}

/// Parse the wide results table into flat evaluation records. The NL
/// baseline column becomes one `nl_baseline` record per configuration-free
/// (model, benchmark) pair, attached to the first configuration for schema
/// completeness.
pub fn parse_wide_csv(text: &str) -> Result<Vec<EvaluationRecord>, LoadError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let expect: Vec<String> = wide_headers();
    let got: Vec<&str> = headers.iter().collect();
    if got != expect.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(schema_err(1, format!("unexpected header row: {got:?}")));
    }
    let mut records = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let line = idx + 2; // header is line 1
        let row = row?;
        if row.len() != expect.len() {
            return Err(schema_err(
                line,
                format!("expected {} fields, found {}", expect.len(), row.len()),
            ));
        }
        let benchmark = row[0].to_string();
        let model = row[1].to_string();
        let parse = |field: usize| -> Result<f64, LoadError> {
            row[field].trim().parse::<f64>().map_err(|_| {
                schema_err(
                    line,
                    format!("bad number {:?} in column {field}", &row[field]),
                )
            })
        };
        let nl = parse(2)?;
        validate_accuracy(nl, line)?;
        records.push(EvaluationRecord {
            model: model.clone(),
            benchmark: benchmark.clone(),
            regime: GROUPS[0].0,
            metric_family: GROUPS[0].1,
            level: EvalLevel::NlBaseline,
            accuracy: nl,
        });
        let mut field = 3;
        for (regime, metric_family) in GROUPS {
            for level in LEVELS {
                let accuracy = parse(field)?;
                validate_accuracy(accuracy, line)?;
                records.push(EvaluationRecord {
                    model: model.clone(),
                    benchmark: benchmark.clone(),
                    regime,
                    metric_family,
                    level,
                    accuracy,
                });
                field += 1;
            }
        }
    }
    Ok(records)
}

fn wide_headers() -> Vec<String> {
    let mut headers = vec![
        "benchmark".to_string(),
        "model".to_string(),
        "nl".to_string(),
    ];
    for (regime, metric) in GROUPS {
        for level in LEVELS {
            headers.push(format!(
                "{}_{}_{}",
                regime_prefix(regime),
                metric.as_str(),
                level.as_str()
            ));
        }
    }
    headers
}

/// Parse a long-format CSV: `model,benchmark,regime,metric_family,level,accuracy`.
pub fn parse_long_csv(text: &str) -> Result<Vec<EvaluationRecord>, LoadError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut records = Vec::new();
    for (idx, row) in reader.deserialize::<EvaluationRecord>().enumerate() {
        let line = idx + 2;
        let record = row.map_err(|e| schema_err(line, e.to_string()))?;
        validate_accuracy(record.accuracy, line)?;
        records.push(record);
    }
    Ok(records)
}

/// Parse JSON-lines with one [`EvaluationRecord`] object per line.
pub fn parse_jsonl(text: &str) -> Result<Vec<EvaluationRecord>, LoadError> {
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: EvaluationRecord =
            serde_json::from_str(line).map_err(|e| schema_err(idx + 1, e.to_string()))?;
        validate_accuracy(record.accuracy, idx + 1)?;
        records.push(record);
    }
    Ok(records)
}

/// Load results from text, sniffing the shape from the header line.
pub fn parse_results(text: &str) -> Result<Vec<EvaluationRecord>, LoadError> {
    let first = text.lines().next().unwrap_or("");
    if first.trim_start().starts_with('{') {
        parse_jsonl(text)
    } else if first.starts_with("benchmark,model,nl") {
        parse_wide_csv(text)
    } else {
        parse_long_csv(text)
    }
}

fn validate_accuracy(accuracy: f64, line: usize) -> Result<(), LoadError> {
    if !(0.0..=100.0).contains(&accuracy) {
        return Err(schema_err(
            line,
            format!("accuracy {accuracy} outside [0, 100]"),
        ));
    }
    Ok(())
}
