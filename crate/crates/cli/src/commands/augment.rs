//! `strata augment`: assemble prompts per record and either emit them
//! (`--dry-run`) or call the configured endpoint and instantiate the
//! returned templates with every solution.

use crate::config::PipelineConfig;
use crate::logging::RunLog;
use anyhow::{Context, Result};
use std::path::Path;
use strata_core::augment::{
    augment_all, dry_run_bundles, AugmentInput, ChatClient, EndpointConfig,
};

pub fn run(
    config: &PipelineConfig,
    out: Option<&Path>,
    dry_run: bool,
    endpoint_url: Option<String>,
    model: Option<String>,
) -> Result<()> {
    config.validate()?;
    let input = config
        .input
        .as_deref()
        .context("augment needs --input (or config.input)")?;
    let out_path = match (out, config.out_dir.as_deref()) {
        (Some(path), _) => path.to_path_buf(),
        (None, Some(dir)) => dir.join(if dry_run {
            "prompt_bundles.jsonl"
        } else {
            "augmented.jsonl"
        }),
        (None, None) => anyhow::bail!("augment needs --out (or config.out_dir)"),
    };
    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut log = RunLog::new(config.log_file.as_deref(), config.verbosity.unwrap_or(1))?;

    let records: Vec<AugmentInput> = strata_core::jsonl::read_jsonl(input)
        .with_context(|| format!("reading {}", input.display()))?;

    if dry_run {
        let mut bundles = Vec::new();
        let mut failures = 0usize;
        for record in &records {
            match dry_run_bundles(record) {
                Ok(mut rows) => bundles.append(&mut rows),
                Err(err) => {
                    failures += 1;
                    log.event(serde_json::json!({
                        "event": "augment_failure", "record_id": record.id,
                        "error": err.to_string(),
                    }));
                }
            }
        }
        strata_core::jsonl::write_jsonl(&out_path, &bundles)?;
        println!(
            "{} prompt bundles for {} records ({failures} failures) -> {}",
            bundles.len(),
            records.len(),
            out_path.display()
        );
        return Ok(());
    }

    let mut endpoint: EndpointConfig = config
        .endpoint
        .clone()
        .or_else(|| endpoint_url.clone().map(|url| EndpointConfig::new(url, "")))
        .context("augment needs an endpoint (config.endpoint or --endpoint-url)")?;
    if let Some(url) = endpoint_url {
        endpoint.url = url;
    }
    if let Some(model) = model {
        endpoint.model = model;
    }
    let concurrency = endpoint.concurrency;
    let client = ChatClient::new(endpoint, config.seed())?;

    let (pairs, failures) = augment_all(&client, &records, concurrency);
    for (record_id, error) in &failures {
        log.event(serde_json::json!({
            "event": "augment_failure", "record_id": record_id, "error": error,
        }));
        log.progress(format!("warning: record {record_id} failed: {error}"));
    }
    strata_core::jsonl::write_jsonl(&out_path, &pairs)?;
    println!(
        "{} pairs from {} records ({} failed) -> {}",
        pairs.len(),
        records.len(),
        failures.len(),
        out_path.display()
    );
    if pairs.is_empty() && !records.is_empty() {
        anyhow::bail!("no record could be augmented");
    }
    Ok(())
}
