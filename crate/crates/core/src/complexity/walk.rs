//! Single-pass tree walk that attributes decision points and logical
//! statements to function scopes.

use super::rules::LanguageRules;
use super::FunctionMetric;
use crate::lang::Language;
use tree_sitter::Node;

/// Name given to the implicit function wrapping module-level statements.
pub const MODULE_FUNCTION: &str = "<module>";

struct Scope {
    name: String,
    cc: u32,
    lloc: u32,
    order: usize,
}

/// Walk the tree and produce one metric entry per function scope, plus the
/// implicit `<module>` scope when any statement lives outside all functions.
///
/// Attribution rules:
/// - every node belongs to its nearest enclosing function-like ancestor;
/// - a function-like node itself (e.g. a `def` header, which is also a
///   logical statement) belongs to the scope it opens, so a function's LLOC
///   is its header plus its body statements, excluding nested functions.
pub(crate) fn collect_functions(
    root: Node,
    source: &[u8],
    rules: &LanguageRules,
) -> Vec<FunctionMetric> {
    let mut scopes = vec![Scope {
        name: MODULE_FUNCTION.to_string(),
        cc: 1,
        lloc: 0,
        order: 0,
    }];

    // Explicit stack instead of recursion: corpora contain deeply nested code.
    let mut stack: Vec<(Node, usize)> = vec![(root, 0)];
    let mut next_order = 1usize;
    while let Some((node, owner)) = stack.pop() {
        // Keyword tokens share kind strings with the constructs they open
        // (e.g. the `lambda` keyword inside a `lambda` node), so the rules
        // apply to named nodes only.
        let owner = if node.is_named() && rules.is_function(&node) {
            scopes.push(Scope {
                name: function_name(&node, source, rules.language()),
                cc: 1,
                lloc: 0,
                order: next_order,
            });
            next_order += 1;
            scopes.len() - 1
        } else {
            owner
        };
        if node.is_named() {
            if rules.is_decision(&node, source) {
                scopes[owner].cc += 1;
            }
            scopes[owner].lloc += rules.lloc_weight(&node);
        }

        // Reversed push keeps document order on pop, so scopes are created
        // in source order.
        for i in (0..node.child_count()).rev() {
            if let Some(child) = node.child(i) {
                stack.push((child, owner));
            }
        }
    }

    let module_has_code = scopes[0].lloc > 0;
    let mut out: Vec<(usize, FunctionMetric)> = scopes
        .into_iter()
        .enumerate()
        .filter(|(idx, _)| *idx != 0 || module_has_code)
        .map(|(_, scope)| {
            (
                scope.order,
                FunctionMetric {
                    name: scope.name,
                    cc: scope.cc,
                    lloc: scope.lloc,
                },
            )
        })
        .collect();
    out.sort_by_key(|(order, _)| *order);
    out.into_iter().map(|(_, metric)| metric).collect()
}

/// Best-effort human-readable name for a function scope.
fn function_name(node: &Node, source: &[u8], language: Language) -> String {
    if let Some(name) = node.child_by_field_name("name") {
        if let Ok(text) = name.utf8_text(source) {
            return text.to_string();
        }
    }
    // Anonymous functions: borrow the name of the variable, property or
    // assignment target they are bound to, when there is one.
    if let Some(parent) = node.parent() {
        let named_by = match parent.kind() {
            "variable_declarator" => parent.child_by_field_name("name"),
            "assignment_expression" | "assignment" => parent.child_by_field_name("left"),
            "pair" => parent.child_by_field_name("key"),
            _ => None,
        };
        if let Some(target) = named_by {
            if let Ok(text) = target.utf8_text(source) {
                return text.to_string();
            }
        }
    }
    match (language, node.kind()) {
        (Language::Python, "lambda") | (Language::Java, "lambda_expression") => {
            "<lambda>".to_string()
        }
        _ => "<anonymous>".to_string(),
    }
}
