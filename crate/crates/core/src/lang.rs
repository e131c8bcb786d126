//! Supported languages and language-tag normalisation.

use serde::{Deserialize, Serialize};
use std::fmt;

/// The three supported programming languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Python,
    Javascript,
    Java,
}

impl Language {
    /// All languages in canonical order (also the emission order of splits).
    pub const ALL: [Language; 3] = [Language::Python, Language::Javascript, Language::Java];

    pub fn as_str(&self) -> &'static str {
        match self {
            Language::Python => "python",
            Language::Javascript => "javascript",
            Language::Java => "java",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Language dialect. Only TypeScript exists, and only on top of JavaScript.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    Typescript,
}

/// Result of normalising a raw fenced-block language tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizedLanguage {
    Supported {
        language: Language,
        dialect: Option<Dialect>,
    },
    Unsupported,
}

impl NormalizedLanguage {
    pub fn language(&self) -> Option<Language> {
        match self {
            NormalizedLanguage::Supported { language, .. } => Some(*language),
            NormalizedLanguage::Unsupported => None,
        }
    }
}

/// Map a raw language tag (the token written after a code fence) onto a
/// supported language. Matching is case-insensitive over a fixed alias table;
/// everything else is unsupported.
pub fn normalize_language(language_raw: &str) -> NormalizedLanguage {
    let tag = language_raw.trim().to_ascii_lowercase();
    match tag.as_str() {
        "py" | "python" | "python3" => NormalizedLanguage::Supported {
            language: Language::Python,
            dialect: None,
        },
        "js" | "javascript" | "node" => NormalizedLanguage::Supported {
            language: Language::Javascript,
            dialect: None,
        },
        "ts" | "typescript" => NormalizedLanguage::Supported {
            language: Language::Javascript,
            dialect: Some(Dialect::Typescript),
        },
        "java" => NormalizedLanguage::Supported {
            language: Language::Java,
            dialect: None,
        },
        _ => NormalizedLanguage::Unsupported,
    }
}
