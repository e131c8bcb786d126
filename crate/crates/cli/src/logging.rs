//! Run log: JSON-lines events to a file, human-readable progress to stderr.

use anyhow::Result;
use serde_json::Value;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub struct RunLog {
    writer: Option<BufWriter<File>>,
    verbosity: u8,
}

impl RunLog {
    pub fn new(path: Option<&Path>, verbosity: u8) -> Result<Self> {
        let writer = match path {
            Some(path) => {
                if let Some(parent) = path.parent() {
                    if !parent.as_os_str().is_empty() {
                        std::fs::create_dir_all(parent)?;
                    }
                }
                Some(BufWriter::new(File::create(path)?))
            }
            None => None,
        };
        Ok(RunLog { writer, verbosity })
    }

    /// Append one structured event.
    pub fn event(&mut self, event: Value) {
        if let Some(writer) = &mut self.writer {
            let _ = serde_json::to_writer(&mut *writer, &event);
            let _ = writer.write_all(b"\n");
        }
    }

    /// Human progress line on stderr.
    pub fn progress(&self, message: impl AsRef<str>) {
        if self.verbosity > 0 {
            eprintln!("{}", message.as_ref());
        }
    }

    pub fn flush(&mut self) {
        if let Some(writer) = &mut self.writer {
            let _ = writer.flush();
        }
    }
}

impl Drop for RunLog {
    fn drop(&mut self) {
        self.flush();
    }
}
