//! Record-level measurement: extraction into source units, metric
//! computation, and aggregation to one measured record per input.
//!
//! A record's CC is the maximum over its primary-language units' `cc_max`;
//! its LLOC is the sum over their `lloc_total`. Records that yield no
//! supported code, fail to parse, or measure zero logical lines are dropped
//! with a reason, never silently.

use crate::complexity::{analyze, ComplexityMetrics};
use crate::dataset::DatasetRecord;
use crate::extract::{to_source_units, RawRecord, Rejection};
use crate::lang::Language;
use serde::Serialize;

/// Why a record was excluded from dataset construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    /// No fenced block in a supported language.
    NoSupportedCode,
    /// Every primary-language block failed to parse (or had nothing to
    /// measure).
    ParseFailure,
}

/// Extraction + measurement outcome for one record.
#[derive(Debug)]
pub enum Measured {
    Kept(Box<DatasetRecord>, MeasureDetail),
    Dropped {
        record_id: String,
        reason: DropReason,
    },
}

/// Per-record measurement detail for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureDetail {
    pub record_id: String,
    pub primary_language: Language,
    pub blocks_measured: usize,
    pub blocks_failed: usize,
    pub off_language_blocks: usize,
    /// One entry per primary-language block, in document order.
    pub blocks: Vec<BlockMetrics>,
}

/// Metrics for one fenced block of the record's primary language.
#[derive(Debug, Clone, Serialize)]
pub struct BlockMetrics {
    /// `<record_id>#<block position>`.
    pub origin_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dialect: Option<crate::lang::Dialect>,
    pub metrics: ComplexityMetrics,
}

/// Measure one record.
pub fn measure_record(record: &RawRecord) -> Measured {
    let extracted = match to_source_units(record) {
        Ok(extracted) => extracted,
        Err(Rejection::NoSupportedCode) => {
            return Measured::Dropped {
                record_id: record.record_id.clone(),
                reason: DropReason::NoSupportedCode,
            }
        }
    };
    let mut cc: u32 = 0;
    let mut lloc: u32 = 0;
    let mut blocks_measured = 0usize;
    let mut blocks_failed = 0usize;
    let mut blocks = Vec::new();
    for unit in &extracted.units {
        let m = analyze(unit);
        if m.parse_ok {
            cc = cc.max(m.cc_max);
            lloc += m.lloc_total;
            blocks_measured += 1;
        } else {
            blocks_failed += 1;
        }
        blocks.push(BlockMetrics {
            origin_id: unit.origin_id.clone(),
            dialect: unit.dialect,
            metrics: m,
        });
    }
    if blocks_measured == 0 || cc == 0 || lloc == 0 {
        return Measured::Dropped {
            record_id: record.record_id.clone(),
            reason: DropReason::ParseFailure,
        };
    }
    let detail = MeasureDetail {
        record_id: record.record_id.clone(),
        primary_language: extracted.primary_language,
        blocks_measured,
        blocks_failed,
        off_language_blocks: extracted.off_language_blocks,
        blocks,
    };
    Measured::Kept(
        Box::new(DatasetRecord {
            record_id: record.record_id.clone(),
            problem_id: record.problem_id.clone(),
            language: extracted.primary_language,
            cc,
            lloc,
            instruction: record.instruction.clone(),
            response: record.response.clone(),
        }),
        detail,
    )
}

/// Corpus-level audit counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct MeasureSummary {
    /// Records whose response also contained supported blocks in another
    /// language (those blocks never contribute to metrics).
    pub multi_language_records: usize,
    /// Primary-language blocks that failed to parse inside kept records.
    pub failed_blocks: usize,
}

/// Measure a whole corpus, splitting it into kept records and drops.
pub fn measure_corpus(
    records: &[RawRecord],
) -> (
    Vec<DatasetRecord>,
    Vec<(String, DropReason)>,
    MeasureSummary,
) {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut summary = MeasureSummary::default();
    for record in records {
        match measure_record(record) {
            Measured::Kept(record, detail) => {
                if detail.off_language_blocks > 0 {
                    summary.multi_language_records += 1;
                }
                summary.failed_blocks += detail.blocks_failed;
                kept.push(*record);
            }
            Measured::Dropped { record_id, reason } => dropped.push((record_id, reason)),
        }
    }
    (kept, dropped, summary)
}
