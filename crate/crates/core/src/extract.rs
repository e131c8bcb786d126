//! Fenced code-block extraction from markdown responses.
//!
//! Only backtick fences with an explicit language token qualify; tilde fences
//! and untagged blocks are tracked (so their contents are never mistaken for
//! new fences) but never emitted. A fence of N >= 3 backticks is closed by a
//! line of at least N backticks, which makes the escalated fences produced by
//! the augmentation templates round-trip.

use crate::lang::{normalize_language, Dialect, Language, NormalizedLanguage};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One instruction-response record as it arrives from an upstream corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    #[serde(rename = "id")]
    pub record_id: String,
    pub instruction: String,
    /// Markdown text containing the fenced solution code.
    pub response: String,
    #[serde(rename = "source", default)]
    pub source_corpus: SourceCorpus,
    /// Present for solution-driven corpora, where many records share a
    /// problem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem_id: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceCorpus {
    Codenet,
    Magicoder,
    EvolInstruct,
    Wizardlm,
    #[default]
    #[serde(other)]
    Other,
}

/// One fenced block, in extraction order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBlock {
    /// The tag exactly as written after the fence.
    pub language_raw: String,
    pub code: String,
    /// Index of the block within the response, strictly increasing.
    pub position: usize,
}

/// Why a record produced no source units.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Rejection {
    #[error("record contains no supported code block")]
    NoSupportedCode,
}

/// Extract every tagged fenced block from a markdown document.
///
/// A fence opens on a line with at most three spaces of indentation, a run of
/// at least three backticks, and a non-empty info string; the emitted tag is
/// the first whitespace-delimited token of that info string. Unterminated
/// fences yield nothing.
pub fn extract_blocks(markdown: &str) -> Vec<CodeBlock> {
    let mut blocks = Vec::new();
    let mut open: Option<(usize, Option<String>, Vec<&str>)> = None; // (fence len, tag, lines)

    for line in markdown.lines() {
        match &mut open {
            None => {
                if let Some((len, info)) = fence_open(line) {
                    let tag = info.split_whitespace().next().map(|t| t.to_string());
                    open = Some((len, tag, Vec::new()));
                }
            }
            Some((len, tag, lines)) => {
                if fence_close(line, *len) {
                    if let Some(tag) = tag.take() {
                        blocks.push(CodeBlock {
                            language_raw: tag,
                            code: lines.join("\n"),
                            position: blocks.len(),
                        });
                    }
                    open = None;
                } else {
                    lines.push(line);
                }
            }
        }
    }
    blocks
}

/// Parse a fence-opening line: `(backtick run length, info string)`.
/// Per CommonMark the info string of a backtick fence may not contain
/// backticks; such lines are not fences at all.
fn fence_open(line: &str) -> Option<(usize, &str)> {
    let stripped = strip_indent(line)?;
    let len = stripped.chars().take_while(|&c| c == '`').count();
    if len < 3 {
        return None;
    }
    let info = &stripped[len..];
    if info.contains('`') {
        return None;
    }
    Some((len, info.trim()))
}

fn fence_close(line: &str, open_len: usize) -> bool {
    let Some(stripped) = strip_indent(line) else {
        return false;
    };
    let len = stripped.chars().take_while(|&c| c == '`').count();
    len >= open_len && stripped[len..].trim().is_empty()
}

/// Fences may be indented by up to three spaces (list items in the upstream
/// corpora); anything deeper is literal content.
fn strip_indent(line: &str) -> Option<&str> {
    let indent = line.len() - line.trim_start_matches(' ').len();
    if indent > 3 {
        return None;
    }
    Some(&line[indent..])
}

/// A block whose tag normalised to a supported language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedBlock {
    pub language: Language,
    pub dialect: Option<Dialect>,
    pub block: CodeBlock,
}

/// Extraction outcome for one record: the record's primary language and one
/// source unit per block of that language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedUnits {
    pub primary_language: Language,
    pub units: Vec<crate::complexity::SourceUnit>,
    /// Supported blocks in other languages, dropped from metric computation.
    pub off_language_blocks: usize,
    /// Whitespace-only supported blocks, which cannot form source units.
    pub blank_blocks: usize,
}

/// Classify each extracted block against the supported-language table.
pub fn supported_blocks(markdown: &str) -> Vec<SupportedBlock> {
    extract_blocks(markdown)
        .into_iter()
        .filter_map(|block| match normalize_language(&block.language_raw) {
            NormalizedLanguage::Supported { language, dialect } => Some(SupportedBlock {
                language,
                dialect,
                block,
            }),
            NormalizedLanguage::Unsupported => None,
        })
        .collect()
}

/// Turn a record into source units for its primary language.
///
/// The primary language is the language of the first supported block; all
/// blocks of that language become units (downstream, the record's CC is the
/// max over units and its LLOC the sum). Records with no supported,
/// non-blank block are rejected.
pub fn to_source_units(record: &RawRecord) -> Result<ExtractedUnits, Rejection> {
    let supported = supported_blocks(&record.response);
    let non_blank: Vec<&SupportedBlock> = supported
        .iter()
        .filter(|b| !b.block.code.trim().is_empty())
        .collect();
    let blank_blocks = supported.len() - non_blank.len();
    let Some(first) = non_blank.first() else {
        return Err(Rejection::NoSupportedCode);
    };
    let primary_language = first.language;
    let mut units = Vec::new();
    let mut off_language_blocks = 0;
    for sb in &non_blank {
        if sb.language == primary_language {
            let unit = crate::complexity::SourceUnit::new(
                format!("{}#{}", record.record_id, sb.block.position),
                sb.language,
                sb.dialect,
                sb.block.code.clone(),
            )
            .expect("blank blocks were filtered above");
            units.push(unit);
        } else {
            off_language_blocks += 1;
        }
    }
    Ok(ExtractedUnits {
        primary_language,
        units,
        off_language_blocks,
        blank_blocks,
    })
}
