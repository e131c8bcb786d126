//! Per-language grammar rules: which syntax nodes open a function scope,
//! which count as decision points for cyclomatic complexity, and which count
//! as logical statements.
//!
//! The same unified ruleset is applied to all three languages:
//!
//! - CC decision points: `if` / `elif` / `else-if` headers, ternary
//!   expressions, every loop header (including comprehension `for` clauses),
//!   every non-default case/match arm, every `catch`/`except` clause, every
//!   short-circuit boolean operator (`and`, `or`, `&&`, `||`), comprehension
//!   `if` clauses, and Python `assert` statements. A bare `else` and a
//!   `default` arm contribute nothing.
//! - LLOC: one per simple statement, one per compound-statement header
//!   (if/loop/try/switch/function/class), one per clause header that carries
//!   its own logic (`elif`, `except`, `catch`, case arms). Bare `else` and
//!   `finally` headers, braces, blank lines and comments contribute nothing.
//!
//! Per-language notes:
//! - Python decorators count one logical statement each (they are evaluated
//!   calls); Java annotations count zero (metadata).
//! - TypeScript type-only declarations (`interface`, `type`, `declare
//!   function`) count one logical statement each and zero decision points.
//! - Java `else` has no syntax node of its own; Python/JavaScript
//!   `else_clause` nodes are weighted zero so that all three languages agree.

use crate::lang::{Dialect, Language};
use tree_sitter::Node;

/// Resolved grammar plus rule tables for one language/dialect combination.
pub(crate) struct LanguageRules {
    pub grammar: tree_sitter::Language,
    functions: &'static [&'static str],
    decisions: &'static [&'static str],
    statements: &'static [&'static str],
    /// Dialect-specific additions to the statement table.
    statements_extra: &'static [&'static str],
    lang: Language,
}

const PYTHON_FUNCTIONS: &[&str] = &["function_definition", "lambda"];

const PYTHON_DECISIONS: &[&str] = &[
    "if_statement",
    "elif_clause",
    "conditional_expression",
    "for_statement",
    "while_statement",
    "for_in_clause",
    "except_clause",
    "boolean_operator",
    "assert_statement",
    // case_clause and if_clause are handled contextually in `is_decision`.
];

const PYTHON_STATEMENTS: &[&str] = &[
    // simple statements
    "expression_statement",
    "assert_statement",
    "break_statement",
    "continue_statement",
    "delete_statement",
    "exec_statement",
    "global_statement",
    "nonlocal_statement",
    "import_statement",
    "import_from_statement",
    "future_import_statement",
    "pass_statement",
    "print_statement",
    "raise_statement",
    "return_statement",
    "type_alias_statement",
    // compound headers and clauses
    "if_statement",
    "elif_clause",
    "for_statement",
    "while_statement",
    "try_statement",
    "with_statement",
    "match_statement",
    "case_clause",
    "except_clause",
    "function_definition",
    "class_definition",
    "decorator",
];

const JS_FUNCTIONS: &[&str] = &[
    "function_declaration",
    "generator_function_declaration",
    "function_expression",
    "generator_function",
    "arrow_function",
    "method_definition",
];

const JS_DECISIONS: &[&str] = &[
    "if_statement",
    "ternary_expression",
    "for_statement",
    "for_in_statement",
    "while_statement",
    "do_statement",
    "switch_case",
    "catch_clause",
    // binary_expression is handled contextually (&& and || only).
];

const JS_STATEMENTS: &[&str] = &[
    "expression_statement",
    "lexical_declaration",
    "variable_declaration",
    "return_statement",
    "break_statement",
    "continue_statement",
    "throw_statement",
    "debugger_statement",
    "import_statement",
    "if_statement",
    "for_statement",
    "for_in_statement",
    "while_statement",
    "do_statement",
    "switch_statement",
    "switch_case",
    "switch_default",
    "try_statement",
    "catch_clause",
    "with_statement",
    "function_declaration",
    "generator_function_declaration",
    "class_declaration",
    "method_definition",
    "class_static_block",
    "decorator",
    // export_statement is handled contextually (wrapper when it carries a
    // declaration).
];

/// Node kinds that exist only in the JavaScript grammar at the pinned
/// versions (TypeScript spells class fields `public_field_definition`).
const JS_EXTRA_STATEMENTS: &[&str] = &["using_declaration", "field_definition"];

const TS_EXTRA_STATEMENTS: &[&str] = &[
    "interface_declaration",
    "type_alias_declaration",
    "enum_declaration",
    "function_signature",
    "abstract_class_declaration",
    "abstract_method_signature",
    "public_field_definition",
    "internal_module",
    "module",
];

const JAVA_FUNCTIONS: &[&str] = &[
    "method_declaration",
    "constructor_declaration",
    "compact_constructor_declaration",
    "lambda_expression",
];

const JAVA_DECISIONS: &[&str] = &[
    "if_statement",
    "ternary_expression",
    "for_statement",
    "enhanced_for_statement",
    "while_statement",
    "do_statement",
    "catch_clause",
    // switch_label and binary_expression are handled contextually.
];

const JAVA_STATEMENTS: &[&str] = &[
    "package_declaration",
    "import_declaration",
    "class_declaration",
    "interface_declaration",
    "enum_declaration",
    "record_declaration",
    "annotation_type_declaration",
    "field_declaration",
    "constant_declaration",
    "method_declaration",
    "constructor_declaration",
    "compact_constructor_declaration",
    "static_initializer",
    "local_variable_declaration",
    "expression_statement",
    "return_statement",
    "break_statement",
    "continue_statement",
    "throw_statement",
    "assert_statement",
    "yield_statement",
    "if_statement",
    "for_statement",
    "enhanced_for_statement",
    "while_statement",
    "do_statement",
    "switch_expression",
    "switch_label",
    "try_statement",
    "try_with_resources_statement",
    "catch_clause",
    "synchronized_statement",
];

/// Comprehension node kinds whose `for`/`if` clauses count as decisions.
const PYTHON_COMPREHENSIONS: &[&str] = &[
    "list_comprehension",
    "set_comprehension",
    "dictionary_comprehension",
    "generator_expression",
];

impl LanguageRules {
    pub fn for_unit(language: Language, dialect: Option<Dialect>) -> Self {
        match (language, dialect) {
            (Language::Python, _) => LanguageRules {
                grammar: tree_sitter_python::LANGUAGE.into(),
                functions: PYTHON_FUNCTIONS,
                decisions: PYTHON_DECISIONS,
                statements: PYTHON_STATEMENTS,
                statements_extra: &[],
                lang: Language::Python,
            },
            (Language::Javascript, None) => LanguageRules {
                grammar: tree_sitter_javascript::LANGUAGE.into(),
                functions: JS_FUNCTIONS,
                decisions: JS_DECISIONS,
                statements: JS_STATEMENTS,
                statements_extra: JS_EXTRA_STATEMENTS,
                lang: Language::Javascript,
            },
            (Language::Javascript, Some(Dialect::Typescript)) => LanguageRules {
                grammar: tree_sitter_typescript::LANGUAGE_TYPESCRIPT.into(),
                functions: JS_FUNCTIONS,
                decisions: JS_DECISIONS,
                statements: JS_STATEMENTS,
                statements_extra: TS_EXTRA_STATEMENTS,
                lang: Language::Javascript,
            },
            (Language::Java, _) => LanguageRules {
                grammar: tree_sitter_java::LANGUAGE.into(),
                functions: JAVA_FUNCTIONS,
                decisions: JAVA_DECISIONS,
                statements: JAVA_STATEMENTS,
                statements_extra: &[],
                lang: Language::Java,
            },
        }
    }

    pub fn is_function(&self, node: &Node) -> bool {
        self.functions.contains(&node.kind())
    }

    /// Does this node count as one cyclomatic decision point?
    pub fn is_decision(&self, node: &Node, source: &[u8]) -> bool {
        let kind = node.kind();
        if self.decisions.contains(&kind) {
            return true;
        }
        match (self.lang, kind) {
            // `and` / `or` chains: one node per operator.
            (Language::Javascript | Language::Java, "binary_expression") => {
                matches!(operator_kind(node), Some("&&") | Some("||"))
            }
            // Python match arms: the wildcard `case _:` is the default path.
            (Language::Python, "case_clause") => !is_wildcard_case(node, source),
            // Comprehension `if` clauses only; `case ... if guard` stays a
            // single arm under the unified ruleset.
            (Language::Python, "if_clause") => node
                .parent()
                .is_some_and(|p| PYTHON_COMPREHENSIONS.contains(&p.kind())),
            // `case` labels count, `default` labels do not.
            (Language::Java, "switch_label") => node.child(0).is_some_and(|c| c.kind() == "case"),
            _ => false,
        }
    }

    /// How many logical statements this node contributes (0 or 1).
    pub fn lloc_weight(&self, node: &Node) -> u32 {
        let kind = node.kind();
        if self.statements.contains(&kind) || self.statements_extra.contains(&kind) {
            // A declaration used as a C-style loop initialiser is part of
            // the loop header, which already counts.
            if matches!(
                kind,
                "lexical_declaration" | "variable_declaration" | "local_variable_declaration"
            ) && node.parent().is_some_and(|p| p.kind() == "for_statement")
            {
                return 0;
            }
            return 1;
        }
        // `export const x = 1` wraps a declaration that already counts;
        // `export { a, b }` and `export default expr` stand alone.
        if self.lang == Language::Javascript
            && kind == "export_statement"
            && node.child_by_field_name("declaration").is_none()
        {
            return 1;
        }
        0
    }

    pub fn language(&self) -> Language {
        self.lang
    }
}

fn operator_kind<'a>(node: &Node<'a>) -> Option<&'a str> {
    node.child_by_field_name("operator").map(|op| op.kind())
}

/// A `case _:` arm with no guard is the fall-through path of a `match`.
fn is_wildcard_case(node: &Node, source: &[u8]) -> bool {
    if node.child_by_field_name("guard").is_some() {
        return false;
    }
    let mut cursor = node.walk();
    let patterns: Vec<Node> = node
        .children(&mut cursor)
        .filter(|c| c.kind() == "case_pattern")
        .collect();
    patterns.len() == 1 && patterns[0].utf8_text(source).is_ok_and(|t| t.trim() == "_")
}
