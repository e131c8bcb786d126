//! `strata build`: corpus -> extraction -> analysis -> splits + manifest.

use crate::config::{MetricArg, PipelineConfig};
use crate::logging::RunLog;
use anyhow::{bail, Context, Result};
use strata_core::dataset::{
    build_problem_driven, build_solution_driven, emit_splits, write_manifest, BuildOutput,
    DatasetManifest, Level, Regime,
};
use strata_core::extract::RawRecord;
use strata_core::lang::Language;
use strata_core::pipeline::measure_corpus;

pub fn run(config: &PipelineConfig) -> Result<()> {
    config.validate()?;
    let input = config
        .input
        .as_deref()
        .context("build needs --input (or config.input)")?;
    let out_dir = config
        .out_dir
        .as_deref()
        .context("build needs --out (or config.out_dir)")?;
    let regime: Regime = config
        .regime
        .map(Regime::from)
        .context("build needs --regime {solution,problem}")?;
    let metric = config.metric.unwrap_or(MetricArg::Both);
    std::fs::create_dir_all(out_dir)?;
    let log_path = config
        .log_file
        .clone()
        .unwrap_or_else(|| out_dir.join("run_log.jsonl"));
    let mut log = RunLog::new(Some(&log_path), config.verbosity.unwrap_or(1))?;

    log.progress(format!("reading corpus {}", input.display()));
    let records: Vec<RawRecord> = strata_core::jsonl::read_jsonl(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let mut ids = std::collections::BTreeSet::new();
    for record in &records {
        if !ids.insert(record.record_id.as_str()) {
            bail!(
                "duplicate record id {:?} in {}",
                record.record_id,
                input.display()
            );
        }
    }
    let (measured, dropped, audit) = measure_corpus(&records);
    for (record_id, reason) in &dropped {
        log.event(serde_json::json!({
            "event": "record_dropped", "record_id": record_id, "reason": reason,
        }));
    }
    if audit.multi_language_records > 0 || audit.failed_blocks > 0 {
        log.event(serde_json::json!({
            "event": "measure_audit",
            "multi_language_records": audit.multi_language_records,
            "failed_blocks": audit.failed_blocks,
        }));
    }
    log.progress(format!(
        "measured {} of {} records ({} dropped)",
        measured.len(),
        records.len(),
        dropped.len()
    ));

    let mut manifests: Vec<DatasetManifest> = Vec::new();
    for family in metric.families() {
        let output = match regime {
            Regime::SolutionDriven => {
                if let (Some(size), Some(targets)) = (config.split_size, config.solution_targets) {
                    if targets.total() != size {
                        bail!(
                            "solution_targets sum to {}, split_size is {size}",
                            targets.total()
                        );
                    }
                }
                build_solution_driven(&measured, family, config.solution_targets, config.seed())?
            }
            Regime::ProblemDriven => build_problem_driven(
                &measured,
                family,
                config.split_size(),
                config.problem_targets,
                config.seed(),
            )?,
        };
        log_build(&output, &mut log);
        let emitted = emit_splits(&output, out_dir)
            .with_context(|| format!("writing splits to {}", out_dir.display()))?;
        print_manifest_summary(&emitted.manifest);
        manifests.push(emitted.manifest);
    }
    let manifest_path = out_dir.join(format!("{}_manifest.json", regime.file_stem()));
    write_manifest(&manifests, &manifest_path)?;
    log.progress(format!("wrote manifest {}", manifest_path.display()));
    Ok(())
}

fn log_build(output: &BuildOutput, log: &mut RunLog) {
    if output.excluded_groups > 0 {
        log.event(serde_json::json!({
            "event": "groups_excluded",
            "metric_family": output.metric_family,
            "count": output.excluded_groups,
            "reason": "fewer_than_five_solutions",
        }));
    }
    for language in Language::ALL {
        let dropped = output.dropped_remainders.get(language);
        if dropped > 0 {
            log.event(serde_json::json!({
                "event": "remainder_dropped",
                "metric_family": output.metric_family,
                "language": language,
                "count": dropped,
            }));
        }
    }
}

fn print_manifest_summary(manifest: &DatasetManifest) {
    println!(
        "{} / {} (seed {}, split size {})",
        manifest.regime.as_str(),
        manifest.metric_family.as_str(),
        manifest.seed,
        manifest.split_size
    );
    println!("level,size,python,javascript,java,mean_cc,mean_lloc");
    for level in Level::ALL {
        let summary = &manifest.levels[&level];
        println!(
            "{},{},{},{},{},{:.2},{:.2}",
            level.as_str(),
            summary.size,
            summary.languages.python,
            summary.languages.javascript,
            summary.languages.java,
            summary.mean_cc,
            summary.mean_lloc
        );
    }
}
