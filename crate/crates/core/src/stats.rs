//! Rank-correlation analysis between complexity level and benchmark
//! accuracy, accuracy deltas against the natural-language baseline, and
//! split summary statistics.

use crate::dataset::{Level, MetricFamily, Regime};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use std::collections::BTreeMap;
use thiserror::Error;

/// One benchmark accuracy observation for one fine-tuning configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub model: String,
    pub benchmark: String,
    pub regime: Regime,
    pub metric_family: MetricFamily,
    pub level: EvalLevel,
    /// Percentage in [0, 100].
    pub accuracy: f64,
}

/// Levels an evaluation row can carry: the six split levels plus the
/// non-code baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalLevel {
    Min,
    Low,
    Mid,
    High,
    Max,
    Ctrl,
    NlBaseline,
}

impl EvalLevel {
    pub fn from_split_level(level: Level) -> Self {
        match level {
            Level::Min => EvalLevel::Min,
            Level::Low => EvalLevel::Low,
            Level::Mid => EvalLevel::Mid,
            Level::High => EvalLevel::High,
            Level::Max => EvalLevel::Max,
            Level::Ctrl => EvalLevel::Ctrl,
        }
    }

    /// Integer difficulty used for correlation: min..max map to 0..4.
    pub fn rank_value(&self) -> Option<u32> {
        match self {
            EvalLevel::Min => Some(0),
            EvalLevel::Low => Some(1),
            EvalLevel::Mid => Some(2),
            EvalLevel::High => Some(3),
            EvalLevel::Max => Some(4),
            EvalLevel::Ctrl | EvalLevel::NlBaseline => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EvalLevel::Min => "min",
            EvalLevel::Low => "low",
            EvalLevel::Mid => "mid",
            EvalLevel::High => "high",
            EvalLevel::Max => "max",
            EvalLevel::Ctrl => "ctrl",
            EvalLevel::NlBaseline => "nl_baseline",
        }
    }
}

/// Spearman correlation with its two-sided significance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    /// NaN when the input was degenerate (all values identical).
    pub rho: f64,
    pub p_value: f64,
    pub n: usize,
    /// p < 0.05
    pub significant: bool,
    pub degenerate: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("input vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("all values identical; rank correlation undefined")]
    DegenerateInput,
    #[error("{key}: found {found} of the five levels min..max")]
    MissingLevel { key: String, found: usize },
    #[error("no nl_baseline accuracy for model {model}, benchmark {benchmark}")]
    MissingBaseline { model: String, benchmark: String },
    #[error("split is empty")]
    EmptySplit,
}

/// Average ranks, ties receiving the mean of the ranks they cover.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("no NaN values"));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // ranks are 1-based; tied entries share the mean rank of their run
        let mean_rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = mean_rank;
        }
        i = j + 1;
    }
    ranks
}

/// Tie-corrected Spearman coefficient: the Pearson correlation of the two
/// average-rank vectors.
pub fn spearman(levels: &[f64], values: &[f64]) -> Result<f64, StatsError> {
    if levels.len() != values.len() {
        return Err(StatsError::LengthMismatch(levels.len(), values.len()));
    }
    let n = levels.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints(n));
    }
    let rx = average_ranks(levels);
    let ry = average_ranks(values);
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mx, my) = (mean(&rx), mean(&ry));
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for k in 0..n {
        let dx = rx[k] - mx;
        let dy = ry[k] - my;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(StatsError::DegenerateInput);
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Two-sided p-value from the t-approximation
/// `t = rho * sqrt((n-2) / (1-rho^2))` with `n-2` degrees of freedom.
/// `|rho| = 1` maps to 0 by convention (the statistic diverges).
pub fn p_value(rho: f64, n: usize) -> Result<f64, StatsError> {
    if n < 3 {
        return Err(StatsError::TooFewPoints(n));
    }
    debug_assert!(rho.abs() <= 1.0 + 1e-12);
    if rho.abs() >= 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as f64;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
    Ok(2.0 * (1.0 - dist.cdf(t.abs())))
}

/// Exact permutation p-value: the fraction of the n! orderings of `values`
/// whose |rho| is at least the observed |rho|. Two-sided, feasible for the
/// five-level design (120 permutations).
pub fn exact_p_value(levels: &[f64], values: &[f64]) -> Result<f64, StatsError> {
    const EPS: f64 = 1e-12;
    let observed = spearman(levels, values)?.abs();
    let mut perm: Vec<f64> = values.to_vec();
    let mut count = 0usize;
    let mut total = 0usize;
    permute(&mut perm, 0, &mut |candidate| {
        total += 1;
        if let Ok(rho) = spearman(levels, candidate) {
            if rho.abs() >= observed - EPS {
                count += 1;
            }
        }
    });
    Ok(count as f64 / total as f64)
}

fn permute(values: &mut [f64], k: usize, visit: &mut impl FnMut(&[f64])) {
    if k == values.len() {
        visit(values);
        return;
    }
    for i in k..values.len() {
        values.swap(k, i);
        permute(values, k + 1, visit);
        values.swap(k, i);
    }
}

/// Key identifying one correlation cell: model x benchmark x configuration.
pub type CorrelationKey = (String, String, Regime, MetricFamily);

/// Compute one Spearman correlation per (model, benchmark, regime,
/// metric-family) combination from the five complexity levels mapped to
/// 0..4. Control and baseline rows are excluded. Degenerate accuracy vectors
/// are flagged rather than dropped.
pub fn correlation_table(
    records: &[EvaluationRecord],
) -> Result<BTreeMap<CorrelationKey, CorrelationResult>, StatsError> {
    let mut cells: BTreeMap<CorrelationKey, BTreeMap<u32, f64>> = BTreeMap::new();
    for r in records {
        if r.level == EvalLevel::NlBaseline {
            continue; // the baseline belongs to no configuration
        }
        let entry = cells
            .entry((
                r.model.clone(),
                r.benchmark.clone(),
                r.regime,
                r.metric_family,
            ))
            .or_default();
        // ctrl rows are excluded from the correlation but still mark the key,
        // so a configuration with no level data is reported, not dropped.
        if let Some(rank) = r.level.rank_value() {
            entry.insert(rank, r.accuracy);
        }
    }
    let mut out = BTreeMap::new();
    for (key, by_rank) in cells {
        if by_rank.len() != 5 {
            return Err(StatsError::MissingLevel {
                key: format!("{}/{}/{}/{}", key.0, key.1, key.2.as_str(), key.3.as_str()),
                found: by_rank.len(),
            });
        }
        let levels: Vec<f64> = by_rank.keys().map(|&k| k as f64).collect();
        let values: Vec<f64> = by_rank.values().copied().collect();
        let result = match spearman(&levels, &values) {
            Ok(rho) => {
                let p = p_value(rho, 5)?;
                CorrelationResult {
                    rho,
                    p_value: p,
                    n: 5,
                    significant: p < 0.05,
                    degenerate: false,
                }
            }
            Err(StatsError::DegenerateInput) => CorrelationResult {
                rho: f64::NAN,
                p_value: f64::NAN,
                n: 5,
                significant: false,
                degenerate: true,
            },
            Err(other) => return Err(other),
        };
        out.insert(key, result);
    }
    Ok(out)
}

/// Key for one baseline delta: model x configuration x level.
pub type DeltaKey = (String, Regime, MetricFamily, EvalLevel);

/// Mean accuracy change versus the NL baseline, averaged over benchmarks.
pub fn delta_vs_baseline(
    records: &[EvaluationRecord],
) -> Result<BTreeMap<DeltaKey, f64>, StatsError> {
    let mut baselines: BTreeMap<(String, String), f64> = BTreeMap::new();
    for r in records {
        if r.level == EvalLevel::NlBaseline {
            baselines.insert((r.model.clone(), r.benchmark.clone()), r.accuracy);
        }
    }
    let mut sums: BTreeMap<DeltaKey, (f64, usize)> = BTreeMap::new();
    for r in records {
        if r.level == EvalLevel::NlBaseline {
            continue;
        }
        let baseline = baselines
            .get(&(r.model.clone(), r.benchmark.clone()))
            .ok_or_else(|| StatsError::MissingBaseline {
                model: r.model.clone(),
                benchmark: r.benchmark.clone(),
            })?;
        let entry = sums
            .entry((r.model.clone(), r.regime, r.metric_family, r.level))
            .or_insert((0.0, 0));
        entry.0 += r.accuracy - baseline;
        entry.1 += 1;
    }
    Ok(sums
        .into_iter()
        .map(|(key, (sum, count))| (key, sum / count as f64))
        .collect())
}

/// Mean CC and LLOC over one split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitStats {
    pub mean_cc: f64,
    pub mean_lloc: f64,
}

pub fn split_stats(records: &[crate::dataset::DatasetRecord]) -> Result<SplitStats, StatsError> {
    if records.is_empty() {
        return Err(StatsError::EmptySplit);
    }
    let n = records.len() as f64;
    Ok(SplitStats {
        mean_cc: records.iter().map(|r| r.cc as f64).sum::<f64>() / n,
        mean_lloc: records.iter().map(|r| r.lloc as f64).sum::<f64>() / n,
    })
}

pub mod results_table;
