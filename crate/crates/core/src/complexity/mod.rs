//! Function-level and unit-level cyclomatic complexity (CC) and logical
//! lines of code (LLOC) for Python, JavaScript/TypeScript and Java.
//!
//! CC is 1 plus the number of decision points in a function; a unit's `cc`
//! is the maximum over its functions. LLOC counts logical statements and is
//! summed over the whole unit. Module-level statements form an implicit
//! `<module>` function so that every parseable unit has a CC of at least 1.
//! See [`rules`] for the exact unified ruleset.

mod rules;
mod walk;

use crate::lang::{Dialect, Language};
use rules::LanguageRules;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tree_sitter::Parser;

pub use walk::MODULE_FUNCTION;

/// One code snippet: the unit of metric computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceUnit {
    /// Opaque identifier tying the unit back to its origin record.
    pub origin_id: String,
    pub language: Language,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dialect: Option<Dialect>,
    pub code: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("code is empty after stripping whitespace")]
    EmptyCode,
    #[error("dialect {0:?} is only valid with javascript")]
    DialectMismatch(Dialect),
}

impl SourceUnit {
    /// Build a unit, enforcing the type invariants: non-blank code, and the
    /// typescript dialect only on top of javascript.
    pub fn new(
        origin_id: impl Into<String>,
        language: Language,
        dialect: Option<Dialect>,
        code: impl Into<String>,
    ) -> Result<Self, UnitError> {
        let code = code.into();
        if code.trim().is_empty() {
            return Err(UnitError::EmptyCode);
        }
        if let Some(dialect) = dialect {
            if language != Language::Javascript {
                return Err(UnitError::DialectMismatch(dialect));
            }
        }
        Ok(SourceUnit {
            origin_id: origin_id.into(),
            language,
            dialect,
            code,
        })
    }
}

/// Metrics for one function (or the implicit `<module>` function).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionMetric {
    pub name: String,
    pub cc: u32,
    pub lloc: u32,
}

/// Unit-level aggregate: CC by maximum over functions, LLOC by sum over all
/// logical statements in the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityMetrics {
    pub cc_max: u32,
    pub lloc_total: u32,
    pub functions: Vec<FunctionMetric>,
    pub parse_ok: bool,
}

impl ComplexityMetrics {
    /// The value recorded for units that could not be measured.
    pub fn failed() -> Self {
        ComplexityMetrics {
            cc_max: 0,
            lloc_total: 0,
            functions: Vec::new(),
            parse_ok: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntactically invalid {language} code")]
    Invalid { language: Language },
    #[error("parser failed to produce a tree")]
    NoTree,
}

/// A parsed unit. Internal to the pipeline; never serialized.
pub struct SyntaxTree {
    tree: tree_sitter::Tree,
    source: Vec<u8>,
    language: Language,
    dialect: Option<Dialect>,
}

impl SyntaxTree {
    pub fn root_kind(&self) -> &'static str {
        self.tree.root_node().kind()
    }

    /// Names of the named functions in the unit, in document order
    /// (lambdas and other anonymous scopes excluded).
    pub fn function_names(&self) -> Vec<String> {
        let rules = LanguageRules::for_unit(self.language, self.dialect);
        let mut names = Vec::new();
        let mut stack = vec![self.tree.root_node()];
        while let Some(node) = stack.pop() {
            if node.is_named() && rules.is_function(&node) {
                if let Some(name) = node.child_by_field_name("name") {
                    if let Ok(text) = name.utf8_text(&self.source) {
                        names.push(text.to_string());
                    }
                }
            }
            for i in (0..node.child_count()).rev() {
                if let Some(child) = node.child(i) {
                    stack.push(child);
                }
            }
        }
        names
    }

    /// Number of logical statement nodes in the whole unit.
    pub fn statement_count(&self) -> usize {
        let rules = LanguageRules::for_unit(self.language, self.dialect);
        self.count_nodes(|node| rules.lloc_weight(node) as usize)
    }

    /// Number of decision-point nodes in the whole unit.
    pub fn decision_count(&self) -> usize {
        let rules = LanguageRules::for_unit(self.language, self.dialect);
        self.count_nodes(|node| usize::from(rules.is_decision(node, &self.source)))
    }

    fn count_nodes(&self, weight: impl Fn(&tree_sitter::Node) -> usize) -> usize {
        let mut total = 0;
        let mut stack = vec![self.tree.root_node()];
        while let Some(node) = stack.pop() {
            if node.is_named() {
                total += weight(&node);
            }
            for i in (0..node.child_count()).rev() {
                if let Some(child) = node.child(i) {
                    stack.push(child);
                }
            }
        }
        total
    }
}

/// Parse a unit with the grammar for its language, rejecting trees that
/// contain any syntax error.
pub fn parse_unit(unit: &SourceUnit) -> Result<SyntaxTree, ParseError> {
    let rules = LanguageRules::for_unit(unit.language, unit.dialect);
    let mut parser = Parser::new();
    parser
        .set_language(&rules.grammar)
        .expect("grammar version compatible with the linked tree-sitter");
    let tree = parser
        .parse(unit.code.as_bytes(), None)
        .ok_or(ParseError::NoTree)?;
    if tree.root_node().has_error() {
        return Err(ParseError::Invalid {
            language: unit.language,
        });
    }
    Ok(SyntaxTree {
        tree,
        source: unit.code.clone().into_bytes(),
        language: unit.language,
        dialect: unit.dialect,
    })
}

/// Compute per-function and unit-level metrics for one unit.
///
/// Parse failures are encoded in the result (`parse_ok = false`, empty
/// function list), not propagated. A unit that parses but contains no
/// logical statement at all (e.g. only comments) is treated the same way:
/// there is nothing to measure, and downstream construction excludes it.
pub fn analyze(unit: &SourceUnit) -> ComplexityMetrics {
    let tree = match parse_unit(unit) {
        Ok(tree) => tree,
        Err(_) => return ComplexityMetrics::failed(),
    };
    let rules = LanguageRules::for_unit(tree.language, tree.dialect);
    let functions = walk::collect_functions(tree.tree.root_node(), &tree.source, &rules);
    if functions.is_empty() {
        return ComplexityMetrics::failed();
    }
    let cc_max = functions.iter().map(|f| f.cc).max().unwrap_or(0);
    let lloc_total = functions.iter().map(|f| f.lloc).sum();
    ComplexityMetrics {
        cc_max,
        lloc_total,
        functions,
        parse_ok: true,
    }
}
