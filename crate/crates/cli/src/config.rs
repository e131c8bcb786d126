//! Pipeline configuration: one JSON document, overridable by flags
//! (flags win).

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use strata_core::augment::EndpointConfig;
use strata_core::dataset::{LanguageCounts, MetricFamily, Regime};

/// Default split size used by the released datasets.
pub const DEFAULT_SPLIT_SIZE: usize = 8_087;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub regime: Option<RegimeArg>,
    pub metric: Option<MetricArg>,
    pub split_size: Option<usize>,
    /// Solution-driven: problem-group targets per language.
    pub solution_targets: Option<LanguageCounts>,
    /// Problem-driven: per-split sample targets per language.
    pub problem_targets: Option<LanguageCounts>,
    pub seed: Option<u64>,
    pub endpoint: Option<EndpointConfig>,
    pub log_file: Option<PathBuf>,
    pub verbosity: Option<u8>,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: PipelineConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        Ok(config)
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(path) => Self::load(path),
            None => Ok(PipelineConfig::default()),
        }
    }

    pub fn split_size(&self) -> usize {
        self.split_size.unwrap_or(DEFAULT_SPLIT_SIZE)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// Validate the invariants that hold for every command.
    pub fn validate(&self) -> Result<()> {
        if self.split_size() < 5 {
            bail!("split_size must be at least 5, got {}", self.split_size());
        }
        if let Some(input) = &self.input {
            if !input.exists() {
                bail!("input path {} does not exist", input.display());
            }
        }
        Ok(())
    }
}

/// CLI-facing regime names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RegimeArg {
    Solution,
    Problem,
}

impl From<RegimeArg> for Regime {
    fn from(arg: RegimeArg) -> Regime {
        match arg {
            RegimeArg::Solution => Regime::SolutionDriven,
            RegimeArg::Problem => Regime::ProblemDriven,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MetricArg {
    Cc,
    Lloc,
    Both,
}

impl MetricArg {
    pub fn families(&self) -> Vec<MetricFamily> {
        match self {
            MetricArg::Cc => vec![MetricFamily::Cc],
            MetricArg::Lloc => vec![MetricFamily::Lloc],
            MetricArg::Both => MetricFamily::BOTH.to_vec(),
        }
    }
}
