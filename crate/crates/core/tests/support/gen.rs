//! Seeded random snippet generator for the metric invariance properties.
//!
//! Generates small statement trees with a known shape, then renders them as
//! Python, JavaScript or Java source. Because the same tree can be rendered
//! with or without comments, with different formatting, or with the whole
//! body wrapped in one extra `if (true)`, the metric invariants can be
//! checked by comparing analyses of two renderings.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use strata_core::lang::Language;

#[derive(Debug, Clone)]
pub enum Stmt {
    Assign(u32),
    If { then: Vec<Stmt>, with_else: bool },
    While(Vec<Stmt>),
    ForRange(Vec<Stmt>),
    Call(u32),
}

pub struct SnippetGen {
    rng: StdRng,
}

impl SnippetGen {
    pub fn new(seed: u64) -> Self {
        SnippetGen {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    pub fn statements(&mut self, depth: u32) -> Vec<Stmt> {
        let n = self.rng.random_range(1..=4);
        (0..n).map(|_| self.statement(depth)).collect()
    }

    fn statement(&mut self, depth: u32) -> Stmt {
        let pick = if depth == 0 {
            self.rng.random_range(0..2)
        } else {
            self.rng.random_range(0..5)
        };
        match pick {
            0 => Stmt::Assign(self.rng.random_range(0..100)),
            1 => Stmt::Call(self.rng.random_range(0..100)),
            2 => Stmt::If {
                then: self.statements(depth - 1),
                with_else: self.rng.random_bool(0.5),
            },
            3 => Stmt::While(self.statements(depth - 1)),
            _ => Stmt::ForRange(self.statements(depth - 1)),
        }
    }
}

/// Rendering options that must never change the metrics.
#[derive(Debug, Clone, Copy, Default)]
pub struct RenderStyle {
    /// Extra indentation added per nesting level (JavaScript/Java only;
    /// Python keeps its line structure).
    pub extra_indent: usize,
    /// Blank lines between sibling statements.
    pub blank_lines: usize,
    /// Line comment inserted before every statement.
    pub comments: bool,
}

/// Render a function with the given body. The function is named `f`; the
/// snippet has no module-level statements besides what the language needs.
pub fn render_function(
    language: Language,
    body: &[Stmt],
    style: RenderStyle,
    wrap: bool,
) -> String {
    match language {
        Language::Python => render_python(body, style, wrap),
        Language::Javascript => render_js(body, style, wrap),
        Language::Java => render_java(body, style, wrap),
    }
}

fn render_python(body: &[Stmt], style: RenderStyle, wrap: bool) -> String {
    let mut out = String::from("def f(n):\n");
    let base = 1;
    let body_indent = if wrap {
        out.push_str("    if True:\n");
        base + 1
    } else {
        base
    };
    py_block(&mut out, body, body_indent, style);
    out.push_str("    return n\n");
    out
}

fn py_block(out: &mut String, stmts: &[Stmt], indent: usize, style: RenderStyle) {
    let pad = "    ".repeat(indent);
    for stmt in stmts {
        for _ in 0..style.blank_lines {
            out.push('\n');
        }
        if style.comments {
            out.push_str(&format!("{pad}# generated\n"));
        }
        match stmt {
            Stmt::Assign(v) => out.push_str(&format!("{pad}n = n + {v}\n")),
            Stmt::Call(v) => out.push_str(&format!("{pad}print(n + {v})\n")),
            Stmt::If { then, with_else } => {
                out.push_str(&format!("{pad}if n > 1:\n"));
                py_block(out, then, indent + 1, style);
                if *with_else {
                    out.push_str(&format!("{pad}else:\n"));
                    out.push_str(&format!("{pad}    pass\n"));
                }
            }
            Stmt::While(inner) => {
                out.push_str(&format!("{pad}while n > 1:\n"));
                py_block(out, inner, indent + 1, style);
                out.push_str(&format!("{pad}    break\n"));
            }
            Stmt::ForRange(inner) => {
                out.push_str(&format!("{pad}for i in range(3):\n"));
                py_block(out, inner, indent + 1, style);
            }
        }
    }
}

fn render_js(body: &[Stmt], style: RenderStyle, wrap: bool) -> String {
    let mut out = String::from("function f(n) {\n");
    let base = 1;
    let indent = if wrap {
        out.push_str(&js_pad(base, style));
        out.push_str("if (true) {\n");
        base + 1
    } else {
        base
    };
    js_block(&mut out, body, indent, style);
    if wrap {
        out.push_str(&js_pad(base, style));
        out.push_str("}\n");
    }
    out.push_str(&js_pad(base, style));
    out.push_str("return n;\n}\n");
    out
}

fn js_pad(indent: usize, style: RenderStyle) -> String {
    " ".repeat((2 + style.extra_indent) * indent)
}

fn js_block(out: &mut String, stmts: &[Stmt], indent: usize, style: RenderStyle) {
    let pad = js_pad(indent, style);
    for stmt in stmts {
        for _ in 0..style.blank_lines {
            out.push('\n');
        }
        if style.comments {
            out.push_str(&format!("{pad}// generated\n"));
        }
        match stmt {
            Stmt::Assign(v) => out.push_str(&format!("{pad}n = n + {v};\n")),
            Stmt::Call(v) => out.push_str(&format!("{pad}console.log(n + {v});\n")),
            Stmt::If { then, with_else } => {
                out.push_str(&format!("{pad}if (n > 1) {{\n"));
                js_block(out, then, indent + 1, style);
                if *with_else {
                    out.push_str(&format!("{pad}}} else {{\n"));
                    out.push_str(&format!("{pad}  n = 0;\n"));
                }
                out.push_str(&format!("{pad}}}\n"));
            }
            Stmt::While(inner) => {
                out.push_str(&format!("{pad}while (n > 1) {{\n"));
                js_block(out, inner, indent + 1, style);
                out.push_str(&format!("{pad}  break;\n"));
                out.push_str(&format!("{pad}}}\n"));
            }
            Stmt::ForRange(inner) => {
                out.push_str(&format!("{pad}for (let i = 0; i < 3; i++) {{\n"));
                js_block(out, inner, indent + 1, style);
                out.push_str(&format!("{pad}}}\n"));
            }
        }
    }
}

fn render_java(body: &[Stmt], style: RenderStyle, wrap: bool) -> String {
    let mut out = String::from("class G {\n");
    out.push_str(&js_pad(1, style));
    out.push_str("static int f(int n) {\n");
    let base = 2;
    let indent = if wrap {
        out.push_str(&js_pad(base, style));
        out.push_str("if (true) {\n");
        base + 1
    } else {
        base
    };
    java_block(&mut out, body, indent, style);
    if wrap {
        out.push_str(&js_pad(base, style));
        out.push_str("}\n");
    }
    out.push_str(&js_pad(base, style));
    out.push_str("return n;\n");
    out.push_str(&js_pad(1, style));
    out.push_str("}\n}\n");
    out
}

fn java_block(out: &mut String, stmts: &[Stmt], indent: usize, style: RenderStyle) {
    let pad = js_pad(indent, style);
    for stmt in stmts {
        for _ in 0..style.blank_lines {
            out.push('\n');
        }
        if style.comments {
            out.push_str(&format!("{pad}// generated\n"));
        }
        match stmt {
            Stmt::Assign(v) => out.push_str(&format!("{pad}n = n + {v};\n")),
            Stmt::Call(v) => out.push_str(&format!("{pad}System.out.println(n + {v});\n")),
            Stmt::If { then, with_else } => {
                out.push_str(&format!("{pad}if (n > 1) {{\n"));
                java_block(out, then, indent + 1, style);
                if *with_else {
                    out.push_str(&format!("{pad}}} else {{\n"));
                    out.push_str(&format!("{pad}  n = 0;\n"));
                }
                out.push_str(&format!("{pad}}}\n"));
            }
            Stmt::While(inner) => {
                out.push_str(&format!("{pad}while (n > 1) {{\n"));
                java_block(out, inner, indent + 1, style);
                out.push_str(&format!("{pad}  break;\n"));
                out.push_str(&format!("{pad}}}\n"));
            }
            Stmt::ForRange(inner) => {
                out.push_str(&format!("{pad}for (int i = 0; i < 3; i++) {{\n"));
                java_block(out, inner, indent + 1, style);
                out.push_str(&format!("{pad}}}\n"));
            }
        }
    }
}
