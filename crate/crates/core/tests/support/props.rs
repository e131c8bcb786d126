//! Shared property checks used by both the property tests and the
//! acceptance suite.

#![allow(dead_code)]

use super::gen::{render_function, RenderStyle, SnippetGen};
use strata_core::complexity::{analyze, ComplexityMetrics, SourceUnit};
use strata_core::lang::Language;

fn metrics_for(language: Language, code: &str) -> ComplexityMetrics {
    let unit = SourceUnit::new("gen", language, None, code).expect("non-empty");
    let m = analyze(&unit);
    assert!(m.parse_ok, "generated snippet must parse:\n{code}");
    m
}

fn function_f(m: &ComplexityMetrics) -> (u32, u32) {
    let f = m
        .functions
        .iter()
        .find(|f| f.name == "f")
        .expect("generated function present");
    (f.cc, f.lloc)
}

/// Run `runs_per_language` random snippets through the three metric
/// invariance checks (comment insertion, whitespace reformatting where
/// legal, single-if wrapping). Each snippet contributes one transformation
/// of each kind. Returns human-readable violations; an empty vector means
/// the properties held.
pub fn check_invariances(runs_per_language: u64) -> Vec<String> {
    let mut violations = Vec::new();
    for language in Language::ALL {
        let mut generator = SnippetGen::new(0xC0DE ^ language as u64);
        for run in 0..runs_per_language {
            let body = generator.statements(3);
            let plain = render_function(language, &body, RenderStyle::default(), false);
            let base = metrics_for(language, &plain);

            // comment insertion
            let commented_style = RenderStyle {
                comments: true,
                ..RenderStyle::default()
            };
            let commented = render_function(language, &body, commented_style, false);
            let with_comments = metrics_for(language, &commented);
            if (with_comments.cc_max, with_comments.lloc_total) != (base.cc_max, base.lloc_total) {
                violations.push(format!(
                    "{language} run {run}: comments changed metrics ({} {} -> {} {})",
                    base.cc_max, base.lloc_total, with_comments.cc_max, with_comments.lloc_total
                ));
            }

            // whitespace reformatting where the language permits
            if language != Language::Python {
                let spread = RenderStyle {
                    extra_indent: 3,
                    blank_lines: 2,
                    ..RenderStyle::default()
                };
                let reformatted = render_function(language, &body, spread, false);
                let reform = metrics_for(language, &reformatted);
                if (reform.cc_max, reform.lloc_total) != (base.cc_max, base.lloc_total) {
                    violations.push(format!(
                        "{language} run {run}: reformatting changed metrics"
                    ));
                }
            }

            // +1 monotonicity of a single `if (true)` wrapper
            let wrapped = render_function(language, &body, RenderStyle::default(), true);
            let wrapped_m = metrics_for(language, &wrapped);
            let (cc0, lloc0) = function_f(&base);
            let (cc1, lloc1) = function_f(&wrapped_m);
            if cc1 != cc0 + 1 || lloc1 != lloc0 + 1 {
                violations.push(format!(
                    "{language} run {run}: wrap changed cc {cc0}->{cc1}, lloc {lloc0}->{lloc1}\n{wrapped}"
                ));
            }
        }
    }
    violations
}

/// Total number of transformations `check_invariances(runs)` exercises:
/// comments + wrap for every language, reformat for the two brace languages.
pub fn transformations_per_run() -> u64 {
    3 * 2 + 2
}
