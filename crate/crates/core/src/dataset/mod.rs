//! Complexity-controlled dataset splits.
//!
//! For each metric family (CC, LLOC) a corpus is cut into five complexity
//! levels plus one mixed control, under one of two regimes:
//!
//! - solution-driven: many solutions per problem; within every
//!   (problem, language) group the least complex, most complex and three
//!   evenly spaced solutions populate the five levels, one record per group
//!   per level;
//! - problem-driven: one solution per record; records are ranked per
//!   language and partitioned into five contiguous bins, then each level is
//!   balanced to a fixed per-language composition.
//!
//! Only the control split consumes randomness, and every random draw comes
//!   from a generator derived from (seed, regime, metric, level, language),
//! so outputs are a pure function of (corpus, configuration, seed).

mod emit;
mod rng;

pub use emit::{emit_splits, split_file_name, write_manifest, EmitOutcome};

use crate::lang::Language;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Which complexity metric a split family is keyed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricFamily {
    Cc,
    Lloc,
}

impl MetricFamily {
    pub const BOTH: [MetricFamily; 2] = [MetricFamily::Cc, MetricFamily::Lloc];

    pub fn as_str(&self) -> &'static str {
        match self {
            MetricFamily::Cc => "cc",
            MetricFamily::Lloc => "lloc",
        }
    }
}

/// Dataset construction regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SolutionDriven,
    ProblemDriven,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::SolutionDriven => "solution_driven",
            Regime::ProblemDriven => "problem_driven",
        }
    }

    /// Short token used in file names and CLI flags.
    pub fn file_stem(&self) -> &'static str {
        match self {
            Regime::SolutionDriven => "solution",
            Regime::ProblemDriven => "problem",
        }
    }
}

/// Complexity level of a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Min,
    Low,
    Mid,
    High,
    Max,
    Ctrl,
}

impl Level {
    pub const RANKED: [Level; 5] = [Level::Min, Level::Low, Level::Mid, Level::High, Level::Max];
    pub const ALL: [Level; 6] = [
        Level::Min,
        Level::Low,
        Level::Mid,
        Level::High,
        Level::Max,
        Level::Ctrl,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Min => "min",
            Level::Low => "low",
            Level::Mid => "mid",
            Level::High => "high",
            Level::Max => "max",
            Level::Ctrl => "ctrl",
        }
    }
}

/// One measured training sample: metrics plus the instruction-response
/// payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub record_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem_id: Option<String>,
    pub language: Language,
    pub cc: u32,
    pub lloc: u32,
    pub instruction: String,
    pub response: String,
}

impl DatasetRecord {
    fn metric(&self, family: MetricFamily) -> u32 {
        match family {
            MetricFamily::Cc => self.cc,
            MetricFamily::Lloc => self.lloc,
        }
    }

    /// Total ordering used for ranking: the chosen metric ascending, ties
    /// broken by the other metric ascending, then by record id.
    fn rank_key(&self, family: MetricFamily) -> (u32, u32, &str) {
        let other = match family {
            MetricFamily::Cc => MetricFamily::Lloc,
            MetricFamily::Lloc => MetricFamily::Cc,
        };
        (self.metric(family), self.metric(other), &self.record_id)
    }
}

/// Membership of one record in one split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitAssignment {
    pub record_id: String,
    pub metric_family: MetricFamily,
    pub level: Level,
    pub regime: Regime,
}

/// Per-language sample counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LanguageCounts {
    pub python: usize,
    pub javascript: usize,
    pub java: usize,
}

impl LanguageCounts {
    pub fn new(python: usize, javascript: usize, java: usize) -> Self {
        LanguageCounts {
            python,
            javascript,
            java,
        }
    }

    pub fn get(&self, language: Language) -> usize {
        match language {
            Language::Python => self.python,
            Language::Javascript => self.javascript,
            Language::Java => self.java,
        }
    }

    pub fn set(&mut self, language: Language, value: usize) {
        match language {
            Language::Python => self.python = value,
            Language::Javascript => self.javascript = value,
            Language::Java => self.java = value,
        }
    }

    pub fn add(&mut self, language: Language, value: usize) {
        self.set(language, self.get(language) + value);
    }

    pub fn total(&self) -> usize {
        self.python + self.javascript + self.java
    }
}

/// Per-level manifest entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub size: usize,
    pub languages: LanguageCounts,
    pub mean_cc: f64,
    pub mean_lloc: f64,
}

/// Summary of one (regime, metric family) family of six splits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub regime: Regime,
    pub metric_family: MetricFamily,
    pub seed: u64,
    pub split_size: usize,
    pub levels: BTreeMap<Level, LevelSummary>,
    /// SHA-256 over the emitted split files, in level order.
    pub digest: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("group has {n} solutions; five representatives need at least 5")]
    TooFewSolutions { n: usize },
    #[error("record {record_id} has no problem_id (required for solution-driven splits)")]
    MissingProblemId { record_id: String },
    #[error("{language}: need {needed} usable groups, corpus has {available}")]
    InsufficientGroups {
        language: Language,
        needed: usize,
        available: usize,
    },
    #[error("{language}: need {needed} samples per level, bin holds {available}")]
    InsufficientSamples {
        language: Language,
        needed: usize,
        available: usize,
    },
    #[error("per-language targets sum to {target_total}, split size is {split_size}")]
    TargetMismatch {
        split_size: usize,
        target_total: usize,
    },
    #[error("corpus has {available} records, need {needed}")]
    CorpusTooSmall { needed: usize, available: usize },
}

/// One usable problem group: its id and five representatives in rank order.
type RankedGroup<'a> = (&'a str, [DatasetRecord; 5]);

/// Sort records ascending by the chosen metric; ties break by the other
/// metric, then by record id, so the order is total.
pub fn rank_within_group(records: &mut [DatasetRecord], metric_family: MetricFamily) {
    records.sort_by(|a, b| a.rank_key(metric_family).cmp(&b.rank_key(metric_family)));
}

/// Indices of the five representatives in a ranked group of `n >= 5`:
/// `round_half_up(k * (n - 1) / 4)` for `k = 0..4`, which always includes
/// both endpoints and is strictly increasing.
pub fn select_representatives(n: usize) -> Result<[usize; 5], BuildError> {
    if n < 5 {
        return Err(BuildError::TooFewSolutions { n });
    }
    let mut indices = [0usize; 5];
    for (k, slot) in indices.iter_mut().enumerate() {
        // round_half_up(k(n-1)/4) in exact integer arithmetic
        *slot = (2 * k * (n - 1) + 4) / 8;
    }
    Ok(indices)
}

/// All six splits for one (regime, metric family) configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOutput {
    pub regime: Regime,
    pub metric_family: MetricFamily,
    pub seed: u64,
    pub split_size: usize,
    /// In [`Level::ALL`] order: min, low, mid, high, max, ctrl.
    pub levels: Vec<(Level, Vec<DatasetRecord>)>,
    /// Problem-driven only: remainder records dropped per language when the
    /// corpus does not divide evenly into five bins.
    pub dropped_remainders: LanguageCounts,
    /// Solution-driven only: groups skipped for having fewer than five
    /// parsed solutions.
    pub excluded_groups: usize,
}

impl BuildOutput {
    pub fn assignments(&self) -> Vec<SplitAssignment> {
        self.levels
            .iter()
            .flat_map(|(level, records)| {
                records.iter().map(|r| SplitAssignment {
                    record_id: r.record_id.clone(),
                    metric_family: self.metric_family,
                    level: *level,
                    regime: self.regime,
                })
            })
            .collect()
    }

    /// Manifest without a digest; emission fills the digest in.
    pub fn manifest(&self, digest: String) -> DatasetManifest {
        let mut levels = BTreeMap::new();
        for (level, records) in &self.levels {
            let mut languages = LanguageCounts::default();
            for r in records {
                languages.add(r.language, 1);
            }
            let n = records.len().max(1) as f64;
            levels.insert(
                *level,
                LevelSummary {
                    size: records.len(),
                    languages,
                    mean_cc: records.iter().map(|r| r.cc as f64).sum::<f64>() / n,
                    mean_lloc: records.iter().map(|r| r.lloc as f64).sum::<f64>() / n,
                },
            );
        }
        DatasetManifest {
            regime: self.regime,
            metric_family: self.metric_family,
            seed: self.seed,
            split_size: self.split_size,
            levels,
            digest,
        }
    }
}

/// Build the six solution-driven splits.
///
/// Per (problem, language) group with at least five parsed solutions, the
/// five representatives populate min..max in rank order. Groups are taken in
/// ascending problem id per language until the per-language group targets
/// are met (all usable groups when `targets` is `None`). The control split
/// draws one of the five representatives per group, uniformly under the
/// seed.
pub fn build_solution_driven(
    corpus: &[DatasetRecord],
    metric_family: MetricFamily,
    targets: Option<LanguageCounts>,
    seed: u64,
) -> Result<BuildOutput, BuildError> {
    let mut groups: BTreeMap<(Language, &str), Vec<&DatasetRecord>> = BTreeMap::new();
    for record in corpus {
        let problem_id =
            record
                .problem_id
                .as_deref()
                .ok_or_else(|| BuildError::MissingProblemId {
                    record_id: record.record_id.clone(),
                })?;
        groups
            .entry((record.language, problem_id))
            .or_default()
            .push(record);
    }

    let mut excluded_groups = 0usize;
    let mut usable: BTreeMap<Language, Vec<RankedGroup>> = BTreeMap::new();
    for ((language, problem_id), members) in groups {
        if members.len() < 5 {
            excluded_groups += 1;
            continue;
        }
        let mut ranked: Vec<DatasetRecord> = members.into_iter().cloned().collect();
        rank_within_group(&mut ranked, metric_family);
        let idx = select_representatives(ranked.len())?;
        let reps = idx.map(|i| ranked[i].clone());
        usable.entry(language).or_default().push((problem_id, reps));
    }

    // Keys of a BTreeMap<(Language, &str), _> come out sorted, so each
    // language's group list is already in ascending problem id order.
    let mut selected: Vec<(Language, Vec<RankedGroup>)> = Vec::new();
    for language in Language::ALL {
        let available = usable.remove(&language).unwrap_or_default();
        let take = match targets {
            Some(t) => {
                let needed = t.get(language);
                if available.len() < needed {
                    return Err(BuildError::InsufficientGroups {
                        language,
                        needed,
                        available: available.len(),
                    });
                }
                needed
            }
            None => available.len(),
        };
        selected.push((language, available.into_iter().take(take).collect()));
    }

    let split_size: usize = selected.iter().map(|(_, g)| g.len()).sum();
    let mut levels: Vec<(Level, Vec<DatasetRecord>)> = Level::RANKED
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let records = selected
                .iter()
                .flat_map(|(_, groups)| groups.iter().map(move |(_, reps)| reps[k].clone()))
                .collect();
            (*level, records)
        })
        .collect();

    let mut ctrl = Vec::with_capacity(split_size);
    for (language, groups) in &selected {
        let mut rng = rng::stratum_rng(
            seed,
            &[
                Regime::SolutionDriven.as_str(),
                metric_family.as_str(),
                Level::Ctrl.as_str(),
                language.as_str(),
            ],
        );
        for (_, reps) in groups {
            let pick = rand::Rng::random_range(&mut rng, 0..5usize);
            ctrl.push(reps[pick].clone());
        }
    }
    levels.push((Level::Ctrl, ctrl));

    Ok(BuildOutput {
        regime: Regime::SolutionDriven,
        metric_family,
        seed,
        split_size,
        levels,
        dropped_remainders: LanguageCounts::default(),
        excluded_groups,
    })
}

/// Build the six problem-driven splits.
///
/// Records are ranked per language and cut into five contiguous bins of
/// `floor(N/5)`; the most complex remainder records are dropped. Each level
/// takes the lowest-ranked `target` records per language from its bin.
/// Missing targets are derived: every non-Python language contributes its
/// whole bin, Python fills the split to `split_size`. The control split
/// stratified-samples `split_size` records across (level x language) cells
/// proportionally to the per-level language targets, drawing from the level
/// pools under the seed.
pub fn build_problem_driven(
    corpus: &[DatasetRecord],
    metric_family: MetricFamily,
    split_size: usize,
    targets: Option<LanguageCounts>,
    seed: u64,
) -> Result<BuildOutput, BuildError> {
    let mut by_language: BTreeMap<Language, Vec<DatasetRecord>> = BTreeMap::new();
    for record in corpus {
        by_language
            .entry(record.language)
            .or_default()
            .push(record.clone());
    }
    let mut bin_sizes = LanguageCounts::default();
    let mut dropped = LanguageCounts::default();
    for language in Language::ALL {
        let records = by_language.entry(language).or_default();
        rank_within_group(records, metric_family);
        let bin = records.len() / 5;
        bin_sizes.set(language, bin);
        dropped.set(language, records.len() - 5 * bin);
    }

    let targets = match targets {
        Some(t) => t,
        None => {
            let others = bin_sizes.javascript + bin_sizes.java;
            let python = split_size
                .checked_sub(others)
                .ok_or(BuildError::TargetMismatch {
                    split_size,
                    target_total: others,
                })?;
            LanguageCounts::new(python, bin_sizes.javascript, bin_sizes.java)
        }
    };
    if targets.total() != split_size {
        return Err(BuildError::TargetMismatch {
            split_size,
            target_total: targets.total(),
        });
    }
    for language in Language::ALL {
        if targets.get(language) > bin_sizes.get(language) {
            return Err(BuildError::InsufficientSamples {
                language,
                needed: targets.get(language),
                available: bin_sizes.get(language),
            });
        }
    }

    // levels[k][language] = the target-sized prefix of bin k
    let mut levels: Vec<(Level, Vec<DatasetRecord>)> = Vec::new();
    let mut pools: Vec<BTreeMap<Language, Vec<DatasetRecord>>> = Vec::new();
    for (k, level) in Level::RANKED.iter().enumerate() {
        let mut records = Vec::with_capacity(split_size);
        let mut pool: BTreeMap<Language, Vec<DatasetRecord>> = BTreeMap::new();
        for language in Language::ALL {
            let ranked = &by_language[&language];
            let bin = bin_sizes.get(language);
            let take = targets.get(language);
            let slice = &ranked[k * bin..k * bin + take];
            records.extend_from_slice(slice);
            pool.insert(language, slice.to_vec());
        }
        levels.push((*level, records));
        pools.push(pool);
    }

    // Control: per language, distribute the language target across the five
    // levels (first `target % 5` levels take one extra), then draw that many
    // members from each level pool without replacement.
    let mut ctrl = Vec::with_capacity(split_size);
    for language in Language::ALL {
        let target = targets.get(language);
        let base = target / 5;
        let extra = target % 5;
        for (k, _level) in Level::RANKED.iter().enumerate() {
            let quota = base + usize::from(k < extra);
            if quota == 0 {
                continue;
            }
            let members = &pools[k][&language];
            let mut rng = rng::stratum_rng(
                seed,
                &[
                    Regime::ProblemDriven.as_str(),
                    metric_family.as_str(),
                    Level::Ctrl.as_str(),
                    language.as_str(),
                    Level::RANKED[k].as_str(),
                ],
            );
            let mut picked = rand::seq::index::sample(&mut rng, members.len(), quota).into_vec();
            picked.sort_unstable();
            ctrl.extend(picked.into_iter().map(|i| members[i].clone()));
        }
    }
    levels.push((Level::Ctrl, ctrl));

    Ok(BuildOutput {
        regime: Regime::ProblemDriven,
        metric_family,
        seed,
        split_size,
        levels,
        dropped_remainders: dropped,
        excluded_groups: 0,
    })
}

/// Cut an arbitrary JSONL corpus (the non-code baseline) down to
/// `split_size` lines, sampled uniformly without replacement under the seed
/// and emitted in original order. Lines pass through byte-identical; no
/// metrics are computed.
pub fn cut_nl_baseline(
    lines: &[String],
    split_size: usize,
    seed: u64,
) -> Result<Vec<String>, BuildError> {
    if lines.len() < split_size {
        return Err(BuildError::CorpusTooSmall {
            needed: split_size,
            available: lines.len(),
        });
    }
    let mut rng = rng::stratum_rng(seed, &["nl_baseline"]);
    let mut picked = rand::seq::index::sample(&mut rng, lines.len(), split_size).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| lines[i].clone()).collect())
}
