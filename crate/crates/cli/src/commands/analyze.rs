//! `strata analyze`: per-file / per-record metrics plus a per-language
//! summary. Parse failures are warnings, not fatal.

use crate::config::PipelineConfig;
use crate::logging::RunLog;
use anyhow::{Context, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use strata_core::complexity::{analyze, ComplexityMetrics, SourceUnit};
use strata_core::extract::RawRecord;
use strata_core::lang::{Dialect, Language};
use strata_core::pipeline::{measure_record, BlockMetrics, Measured};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LanguageArg {
    Python,
    Javascript,
    Typescript,
    Java,
}

impl LanguageArg {
    fn language(&self) -> (Language, Option<Dialect>) {
        match self {
            LanguageArg::Python => (Language::Python, None),
            LanguageArg::Javascript => (Language::Javascript, None),
            LanguageArg::Typescript => (Language::Javascript, Some(Dialect::Typescript)),
            LanguageArg::Java => (Language::Java, None),
        }
    }
}

#[derive(Serialize)]
struct ReportRow {
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    primary_language: Option<Language>,
    parse_ok: bool,
    /// Record-level aggregates: max CC over blocks, summed LLOC.
    #[serde(skip_serializing_if = "Option::is_none")]
    cc: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lloc: Option<u32>,
    /// Unit metrics for plain source files.
    #[serde(skip_serializing_if = "Option::is_none")]
    metrics: Option<ComplexityMetrics>,
    /// Per-block metrics for JSONL records.
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<BlockMetrics>>,
}

#[derive(Default)]
struct LanguageSummary {
    analyzed: usize,
    failed: usize,
    cc_sum: u64,
    lloc_sum: u64,
}

pub fn run(
    config: &PipelineConfig,
    paths: &[PathBuf],
    language: Option<LanguageArg>,
    out: Option<&Path>,
) -> Result<()> {
    anyhow::ensure!(!paths.is_empty(), "analyze needs at least one path");
    let mut log = RunLog::new(config.log_file.as_deref(), config.verbosity.unwrap_or(1))?;

    let mut files = Vec::new();
    for path in paths {
        collect_files(path, &mut files).with_context(|| format!("listing {}", path.display()))?;
    }
    files.sort();

    let mut rows: Vec<ReportRow> = Vec::new();
    let mut summary: BTreeMap<String, LanguageSummary> = BTreeMap::new();
    for file in &files {
        if file.extension().is_some_and(|e| e == "jsonl") {
            analyze_record_file(file, &mut rows, &mut summary, &mut log)?;
        } else {
            analyze_source_file(file, language, &mut rows, &mut summary, &mut log)?;
        }
    }

    let report: Vec<String> = rows
        .iter()
        .map(|row| serde_json::to_string(row).expect("serializable report row"))
        .collect();
    match out {
        Some(path) => {
            std::fs::write(path, report.join("\n") + "\n")?;
            print_summary(&summary, &mut std::io::stdout().lock())?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for line in &report {
                writeln!(stdout, "{line}")?;
            }
            print_summary(&summary, &mut std::io::stderr().lock())?;
        }
    }
    Ok(())
}

fn collect_files(path: &Path, files: &mut Vec<PathBuf>) -> Result<()> {
    if path.is_dir() {
        for entry in std::fs::read_dir(path)? {
            collect_files(&entry?.path(), files)?;
        }
    } else {
        files.push(path.to_path_buf());
    }
    Ok(())
}

fn language_for(path: &Path, forced: Option<LanguageArg>) -> Option<(Language, Option<Dialect>)> {
    if let Some(arg) = forced {
        return Some(arg.language());
    }
    match path.extension()?.to_str()? {
        "py" => Some((Language::Python, None)),
        "js" | "jsx" | "mjs" | "cjs" => Some((Language::Javascript, None)),
        "ts" | "tsx" => Some((Language::Javascript, Some(Dialect::Typescript))),
        "java" => Some((Language::Java, None)),
        _ => None,
    }
}

fn analyze_source_file(
    file: &Path,
    forced: Option<LanguageArg>,
    rows: &mut Vec<ReportRow>,
    summary: &mut BTreeMap<String, LanguageSummary>,
    log: &mut RunLog,
) -> Result<()> {
    let source = file.display().to_string();
    let Some((language, dialect)) = language_for(file, forced) else {
        log.progress(format!("warning: {source}: unknown language, skipped"));
        log.event(serde_json::json!({
            "event": "file_skipped", "path": source, "reason": "unknown_language",
        }));
        return Ok(());
    };
    let metrics = match std::fs::read(file) {
        Ok(bytes) => match String::from_utf8(bytes) {
            Ok(code) if !code.trim().is_empty() => {
                analyze(&SourceUnit::new(&source, language, dialect, code).expect("non-blank"))
            }
            _ => ComplexityMetrics::failed(),
        },
        Err(err) => {
            log.progress(format!("warning: {source}: {err}"));
            ComplexityMetrics::failed()
        }
    };
    record_row(source, Some(language), metrics, rows, summary, log);
    Ok(())
}

fn analyze_record_file(
    file: &Path,
    rows: &mut Vec<ReportRow>,
    summary: &mut BTreeMap<String, LanguageSummary>,
    log: &mut RunLog,
) -> Result<()> {
    let records: Vec<RawRecord> = strata_core::jsonl::read_jsonl(file)
        .with_context(|| format!("reading {}", file.display()))?;
    for record in &records {
        let source = format!("{}#{}", file.display(), record.record_id);
        match measure_record(record) {
            Measured::Kept(kept, detail) => {
                let entry = summary.entry(kept.language.to_string()).or_default();
                entry.analyzed += 1;
                entry.cc_sum += u64::from(kept.cc);
                entry.lloc_sum += u64::from(kept.lloc);
                rows.push(ReportRow {
                    source,
                    primary_language: Some(kept.language),
                    parse_ok: true,
                    cc: Some(kept.cc),
                    lloc: Some(kept.lloc),
                    metrics: None,
                    blocks: Some(detail.blocks),
                });
            }
            Measured::Dropped { record_id, reason } => {
                log.event(serde_json::json!({
                    "event": "record_dropped", "record_id": record_id,
                    "reason": reason, "file": file.display().to_string(),
                }));
                summary.entry("unparsed".into()).or_default().failed += 1;
                rows.push(ReportRow {
                    source,
                    primary_language: None,
                    parse_ok: false,
                    cc: None,
                    lloc: None,
                    metrics: None,
                    blocks: None,
                });
            }
        }
    }
    Ok(())
}

fn record_row(
    source: String,
    language: Option<Language>,
    metrics: ComplexityMetrics,
    rows: &mut Vec<ReportRow>,
    summary: &mut BTreeMap<String, LanguageSummary>,
    log: &mut RunLog,
) {
    let key = language.map_or_else(|| "unknown".to_string(), |l| l.to_string());
    let entry = summary.entry(key).or_default();
    if metrics.parse_ok {
        entry.analyzed += 1;
        entry.cc_sum += u64::from(metrics.cc_max);
        entry.lloc_sum += u64::from(metrics.lloc_total);
    } else {
        entry.failed += 1;
        log.progress(format!("warning: {source}: parse failure"));
        log.event(serde_json::json!({
            "event": "parse_failure", "path": source,
        }));
    }
    rows.push(ReportRow {
        source,
        primary_language: language,
        parse_ok: metrics.parse_ok,
        cc: metrics.parse_ok.then_some(metrics.cc_max),
        lloc: metrics.parse_ok.then_some(metrics.lloc_total),
        metrics: metrics.parse_ok.then_some(metrics),
        blocks: None,
    });
}

fn print_summary(summary: &BTreeMap<String, LanguageSummary>, sink: &mut impl Write) -> Result<()> {
    writeln!(sink, "language,analyzed,failed,mean_cc,mean_lloc")?;
    for (language, s) in summary {
        let denom = s.analyzed.max(1) as f64;
        writeln!(
            sink,
            "{language},{},{},{:.2},{:.2}",
            s.analyzed,
            s.failed,
            s.cc_sum as f64 / denom,
            s.lloc_sum as f64 / denom
        )?;
    }
    Ok(())
}
