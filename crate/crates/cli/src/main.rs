//! `strata`: complexity metrics, complexity-controlled dataset splits, and
//! rank-correlation analysis over instruction-tuning corpora.

mod commands;
mod config;
mod logging;

use anyhow::Result;
use clap::{Parser, Subcommand};
use config::{MetricArg, PipelineConfig, RegimeArg};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "Complexity-controlled dataset toolkit"
)]
struct Cli {
    /// JSON configuration file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random draw in the run.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON-lines run log (drops, exclusions, failures).
    #[arg(long, global = true)]
    log: Option<PathBuf>,
    /// 0 = quiet, 1 = progress on stderr.
    #[arg(long, global = true)]
    verbosity: Option<u8>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute CC/LLOC for source files, directories, or JSONL record files.
    Analyze {
        /// Files or directories to analyze.
        paths: Vec<PathBuf>,
        /// Force a language instead of inferring from file extensions.
        #[arg(long, value_enum)]
        language: Option<commands::analyze::LanguageArg>,
        /// Write the per-record JSONL report here (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the six complexity splits per metric family from a corpus.
    Build {
        /// Input JSONL corpus ({id, instruction, response, source?, problem_id?}).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output directory for split files and the manifest.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        regime: Option<RegimeArg>,
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
        #[arg(long)]
        split_size: Option<usize>,
    },
    /// Cut a non-code JSONL corpus to the split size (the NL baseline).
    Control {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        split_size: Option<usize>,
    },
    /// Summarize split files: sizes, language counts, mean CC/LLOC.
    Stats {
        /// Split JSONL files.
        files: Vec<PathBuf>,
        /// Write the summary CSV here (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spearman correlations and NL-baseline deltas from evaluation results.
    Correlate {
        /// Results file (wide CSV, long CSV, or JSONL). Defaults to the
        /// bundled full results table.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output directory for correlations.{csv,json} and deltas.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compute exact permutation p-values.
        #[arg(long)]
        exact_p: bool,
    },
    /// Turn problem/solution records into instruction-response pairs.
    Augment {
        /// Input JSONL ({id, html, solutions: [{id, language, code}]}).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit prompt bundles instead of calling the endpoint.
        #[arg(long)]
        dry_run: bool,
        /// Chat-completions URL (overrides the config).
        #[arg(long)]
        endpoint_url: Option<String>,
        /// Model identifier (overrides the config).
        #[arg(long)]
        model: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut config = PipelineConfig::load_or_default(cli.config.as_deref())?;
    if cli.seed.is_some() {
        config.seed = cli.seed;
    }
    if cli.log.is_some() {
        config.log_file = cli.log;
    }
    if cli.verbosity.is_some() {
        config.verbosity = cli.verbosity;
    }

    match cli.command {
        Command::Analyze {
            paths,
            language,
            out,
        } => commands::analyze::run(&config, &paths, language, out.as_deref()),
        Command::Build {
            input,
            out,
            regime,
            metric,
            split_size,
        } => {
            if input.is_some() {
                config.input = input;
            }
            if out.is_some() {
                config.out_dir = out;
            }
            if regime.is_some() {
                config.regime = regime;
            }
            if metric.is_some() {
                config.metric = metric;
            }
            if split_size.is_some() {
                config.split_size = split_size;
            }
            commands::build::run(&config)
        }
        Command::Control {
            input,
            out,
            split_size,
        } => {
            if input.is_some() {
                config.input = input;
            }
            if split_size.is_some() {
                config.split_size = split_size;
            }
            commands::control::run(&config, out.as_deref())
        }
        Command::Stats { files, out } => commands::stats::run(&files, out.as_deref()),
        Command::Correlate {
            input,
            out,
            exact_p,
        } => commands::correlate::run(input.as_deref(), out.as_deref(), exact_p),
        Command::Augment {
            input,
            out,
            dry_run,
            endpoint_url,
            model,
        } => {
            if input.is_some() {
                config.input = input;
            }
            commands::augment::run(&config, out.as_deref(), dry_run, endpoint_url, model)
        }
    }
}
