//! `strata control`: cut the non-code NL-baseline corpus to the split size.
//! Selected lines pass through byte-identical, in original order.

use crate::config::PipelineConfig;
use crate::logging::RunLog;
use anyhow::{Context, Result};
use std::path::Path;
use strata_core::dataset::cut_nl_baseline;

pub fn run(config: &PipelineConfig, out: Option<&Path>) -> Result<()> {
    config.validate()?;
    let input = config
        .input
        .as_deref()
        .context("control needs --input (or config.input)")?;
    let out_path = match (out, config.out_dir.as_deref()) {
        (Some(path), _) => path.to_path_buf(),
        (None, Some(dir)) => dir.join("nl_baseline.jsonl"),
        (None, None) => anyhow::bail!("control needs --out (or config.out_dir)"),
    };
    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let log = RunLog::new(None, config.verbosity.unwrap_or(1))?;

    let lines = strata_core::jsonl::read_lines(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let sampled = cut_nl_baseline(&lines, config.split_size(), config.seed())?;
    strata_core::jsonl::write_raw_lines(&out_path, &sampled)?;
    log.progress(format!(
        "sampled {} of {} lines into {}",
        sampled.len(),
        lines.len(),
        out_path.display()
    ));
    println!("{} records -> {}", sampled.len(), out_path.display());
    Ok(())
}
