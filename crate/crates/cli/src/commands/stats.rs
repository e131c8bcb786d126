//! `strata stats`: summary statistics over emitted split files.

use anyhow::{Context, Result};
use serde::Deserialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use strata_core::dataset::DatasetRecord;
use strata_core::lang::Language;
use strata_core::stats::split_stats;

/// The emitted split row shape, reduced to what statistics need.
#[derive(Deserialize)]
struct SplitRow {
    id: String,
    language: Language,
    cc: u32,
    lloc: u32,
}

pub fn run(files: &[PathBuf], out: Option<&Path>) -> Result<()> {
    anyhow::ensure!(!files.is_empty(), "stats needs at least one split file");
    let mut csv = String::from("file,records,python,javascript,java,mean_cc,mean_lloc\n");
    for file in files {
        let rows: Vec<SplitRow> = strata_core::jsonl::read_jsonl(file)
            .with_context(|| format!("reading {}", file.display()))?;
        let records: Vec<DatasetRecord> = rows
            .iter()
            .map(|row| DatasetRecord {
                record_id: row.id.clone(),
                problem_id: None,
                language: row.language,
                cc: row.cc,
                lloc: row.lloc,
                instruction: String::new(),
                response: String::new(),
            })
            .collect();
        let stats =
            split_stats(&records).with_context(|| format!("{}: split is empty", file.display()))?;
        let count = |language: Language| rows.iter().filter(|r| r.language == language).count();
        csv.push_str(&format!(
            "{},{},{},{},{},{:.2},{:.2}\n",
            file.display(),
            rows.len(),
            count(Language::Python),
            count(Language::Javascript),
            count(Language::Java),
            stats.mean_cc,
            stats.mean_lloc
        ));
    }
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}
