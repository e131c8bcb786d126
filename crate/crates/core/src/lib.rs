//! Structural code complexity metrics and complexity-controlled dataset
//! construction for instruction-tuning corpora.
//!
//! The crate is organised around five stages:
//!
//! - [`complexity`] parses Python, JavaScript (incl. TypeScript) and Java
//!   snippets and computes cyclomatic complexity and logical lines of code.
//! - [`extract`] pulls fenced code blocks out of markdown responses and turns
//!   them into analysable source units.
//! - [`dataset`] ranks measured records and builds the complexity-level
//!   splits (five levels plus a control) for both the solution-driven and
//!   problem-driven regimes, with deterministic seeded sampling.
//! - [`augment`] assembles the prompt templates used to convert raw
//!   problem/solution corpora into instruction-response pairs, and talks to a
//!   chat-completion endpoint.
//! - [`stats`] computes split summary statistics, accuracy deltas against the
//!   natural-language baseline, and Spearman rank correlations.

pub mod augment;
pub mod complexity;
pub mod dataset;
pub mod extract;
pub mod jsonl;
pub mod lang;
pub mod pipeline;
pub mod stats;

pub use complexity::{analyze, ComplexityMetrics, FunctionMetric, SourceUnit};
pub use dataset::{DatasetManifest, DatasetRecord, Level, MetricFamily, Regime, SplitAssignment};
pub use extract::{CodeBlock, RawRecord};
pub use lang::{Dialect, Language};
pub use stats::{CorrelationResult, EvaluationRecord};
