//! `strata correlate`: Spearman correlations per (model, benchmark,
//! configuration) plus accuracy deltas against the NL baseline.

use anyhow::{Context, Result};
use std::path::Path;
use strata_core::stats::results_table::{parse_results, BUNDLED_RESULTS_CSV};
use strata_core::stats::{correlation_table, delta_vs_baseline, exact_p_value, EvaluationRecord};

pub fn run(input: Option<&Path>, out: Option<&Path>, exact_p: bool) -> Result<()> {
    let text = match input {
        Some(path) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => BUNDLED_RESULTS_CSV.to_string(),
    };
    let records = parse_results(&text)?;
    let correlations = correlation_table(&records)?;
    let deltas = delta_vs_baseline(&records)?;

    let out_dir = out.unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(out_dir)?;

    let mut csv = String::from(if exact_p {
        "model,benchmark,regime,metric_family,rho,p_value,n,significant,p_exact\n"
    } else {
        "model,benchmark,regime,metric_family,rho,p_value,n,significant\n"
    });
    let mut json_rows = Vec::new();
    let mut significant = 0usize;
    for ((model, benchmark, regime, family), result) in &correlations {
        if result.significant {
            significant += 1;
        }
        let base = format!(
            "{model},{benchmark},{},{},{:.6},{:.6},{},{}",
            regime.as_str(),
            family.as_str(),
            result.rho,
            result.p_value,
            result.n,
            result.significant
        );
        if exact_p {
            let p_exact = exact_permutation_p(&records, model, benchmark, *regime, *family)?;
            csv.push_str(&format!("{base},{p_exact:.6}\n"));
        } else {
            csv.push_str(&base);
            csv.push('\n');
        }
        json_rows.push(serde_json::json!({
            "model": model,
            "benchmark": benchmark,
            "regime": regime,
            "metric_family": family,
            "rho": result.rho,
            "p_value": result.p_value,
            "n": result.n,
            "significant": result.significant,
            "degenerate": result.degenerate,
        }));
    }
    std::fs::write(out_dir.join("correlations.csv"), &csv)?;
    std::fs::write(
        out_dir.join("correlations.json"),
        serde_json::to_string_pretty(&json_rows)? + "\n",
    )?;

    let mut delta_csv = String::from("model,regime,metric_family,level,delta\n");
    for ((model, regime, family, level), delta) in &deltas {
        delta_csv.push_str(&format!(
            "{model},{},{},{},{delta:.6}\n",
            regime.as_str(),
            family.as_str(),
            level.as_str()
        ));
    }
    std::fs::write(out_dir.join("deltas.csv"), &delta_csv)?;

    println!(
        "{} correlations ({} significant at alpha = 0.05), {} delta rows -> {}",
        correlations.len(),
        significant,
        deltas.len(),
        out_dir.display()
    );
    Ok(())
}

/// Recompute the five level accuracies for one key and run the permutation
/// test on them.
fn exact_permutation_p(
    records: &[EvaluationRecord],
    model: &str,
    benchmark: &str,
    regime: strata_core::dataset::Regime,
    family: strata_core::dataset::MetricFamily,
) -> Result<f64> {
    let mut by_rank: Vec<(u32, f64)> = records
        .iter()
        .filter(|r| {
            r.model == model
                && r.benchmark == benchmark
                && r.regime == regime
                && r.metric_family == family
        })
        .filter_map(|r| r.level.rank_value().map(|rank| (rank, r.accuracy)))
        .collect();
    by_rank.sort_by_key(|(rank, _)| *rank);
    let levels: Vec<f64> = by_rank.iter().map(|(rank, _)| f64::from(*rank)).collect();
    let values: Vec<f64> = by_rank.iter().map(|(_, accuracy)| *accuracy).collect();
    match exact_p_value(&levels, &values) {
        Ok(p) => Ok(p),
        // degenerate vectors have no defined correlation; report NaN
        Err(_) => Ok(f64::NAN),
    }
}
