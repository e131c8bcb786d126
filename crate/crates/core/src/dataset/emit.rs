//! Split emission: one JSON-lines file per (regime, metric family, level)
//! plus a manifest carrying summary statistics and a content digest.
//! Identical inputs and seed produce byte-identical files.

use super::{BuildOutput, DatasetManifest, DatasetRecord, Level, MetricFamily, Regime};
use crate::lang::Language;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// The JSONL schema of emitted split rows.
#[derive(Debug, Serialize)]
struct SplitRow<'a> {
    id: &'a str,
    instruction: &'a str,
    response: &'a str,
    language: Language,
    cc: u32,
    lloc: u32,
    level: Level,
    metric_family: MetricFamily,
    regime: Regime,
}

#[derive(Debug)]
pub struct EmitOutcome {
    pub split_files: Vec<PathBuf>,
    pub manifest: DatasetManifest,
}

/// Serialize one split into JSONL bytes.
fn split_bytes(output: &BuildOutput, level: Level, records: &[DatasetRecord]) -> Vec<u8> {
    let mut bytes = Vec::new();
    for r in records {
        let row = SplitRow {
            id: &r.record_id,
            instruction: &r.instruction,
            response: &r.response,
            language: r.language,
            cc: r.cc,
            lloc: r.lloc,
            level,
            metric_family: output.metric_family,
            regime: output.regime,
        };
        bytes.extend_from_slice(&serde_json::to_vec(&row).expect("serializable row"));
        bytes.push(b'\n');
    }
    bytes
}

pub fn split_file_name(regime: Regime, metric_family: MetricFamily, level: Level) -> String {
    format!(
        "{}_{}_{}.jsonl",
        regime.file_stem(),
        metric_family.as_str(),
        level.as_str()
    )
}

/// Write the six split files for one build and return its manifest with the
/// digest filled in. The digest is SHA-256 over the split file bytes in
/// level order (min, low, mid, high, max, ctrl).
pub fn emit_splits(output: &BuildOutput, out_dir: &Path) -> io::Result<EmitOutcome> {
    fs::create_dir_all(out_dir)?;
    let mut hasher = Sha256::new();
    let mut split_files = Vec::new();
    for (level, records) in &output.levels {
        let bytes = split_bytes(output, *level, records);
        hasher.update(&bytes);
        let path = out_dir.join(split_file_name(output.regime, output.metric_family, *level));
        fs::write(&path, bytes)?;
        split_files.push(path);
    }
    let digest = hex(&hasher.finalize());
    Ok(EmitOutcome {
        split_files,
        manifest: output.manifest(digest),
    })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write one or more manifests (one per metric family built in this run) as
/// a single pretty-printed JSON array.
pub fn write_manifest(manifests: &[DatasetManifest], path: &Path) -> io::Result<()> {
    let json = serde_json::to_string_pretty(manifests).expect("serializable manifest");
    fs::write(path, json + "\n")
}
