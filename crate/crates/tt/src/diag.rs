use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::ast::Span;
use crate::syntax_error::SyntaxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
        }
    }
}

/// One finding about a program. Every rejected definition produces at least one.
///
/// `code` is a stable kebab-case identifier: `syntax`, `type-mismatch`, `cannot-infer`,
/// `unbound-variable`, `duplicate-definition`, `budget` or `internal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub span: Span,
    pub message: String,
    /// The environment where the failing check was observed: each bound variable with its
    /// value as set-literal text.
    pub counterexample: Option<Vec<(String, String)>>,
}

impl Diagnostic {
    pub fn error(code: &'static str, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            code,
            span,
            message: message.into(),
            counterexample: None,
        }
    }

    pub fn with_counterexample(mut self, env: Vec<(String, String)>) -> Diagnostic {
        self.counterexample = Some(env);
        self
    }

    /// `file:line:col: error[code]: message`, plus an indented counterexample line if any.
    pub fn render(&self, file: &str, src: &str) -> String {
        let (line, col) = line_col(src, self.span.start);
        let mut out = format!(
            "{file}:{line}:{col}: {}[{}]: {}\n",
            self.severity.as_str(),
            self.code,
            self.message
        );
        if let Some(env) = &self.counterexample {
            out.push_str("  counterexample:");
            if env.is_empty() {
                out.push_str(" (empty environment)");
            }
            for (i, (name, value)) in env.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                let _ = write!(out, "{sep}{name} = {value}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, file: &str, src: &str) -> Value {
        let (line, col) = line_col(src, self.span.start);
        let (end_line, end_col) = line_col(src, self.span.end);
        json!({
            "file": file,
            "severity": self.severity.as_str(),
            "code": self.code,
            "message": self.message,
            "span": {
                "start": self.span.start,
                "end": self.span.end,
                "line": line,
                "col": col,
                "end_line": end_line,
                "end_col": end_col,
            },
            "counterexample": self.counterexample.as_ref().map(|env| {
                env.iter()
                    .map(|(name, value)| json!({"name": name, "value": value}))
                    .collect::<Vec<_>>()
            }),
        })
    }
}

impl From<SyntaxError> for Diagnostic {
    fn from(e: SyntaxError) -> Diagnostic {
        Diagnostic::error("syntax", e.span, e.message)
    }
}

/// 1-based line and column (in characters) of a byte offset. Offsets past the end clamp.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(src.len());
    while !src.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, src[line_start..offset].chars().count() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let src = "ab\ncλd\n";
        assert_eq!(line_col(src, 0), (1, 1));
        assert_eq!(line_col(src, 3), (2, 1));
        assert_eq!(line_col(src, 6), (2, 3));
        assert_eq!(line_col(src, 100), (3, 1));
    }

    #[test]
    fn rendering() {
        let d = Diagnostic::error(
            "type-mismatch",
            Span::new(3, 4),
            "expected `Unit`, found `Bool`",
        )
        .with_counterexample(vec![
            ("b".into(), "{}".into()),
            ("x".into(), "<{},{}>".into()),
        ]);
        assert_eq!(
            d.render("f.vz", "ab\ncd"),
            "f.vz:2:1: error[type-mismatch]: expected `Unit`, found `Bool`\n  counterexample: b = {}, x = <{},{}>\n"
        );
        let j = d.to_json("f.vz", "ab\ncd");
        assert_eq!(j["span"]["line"], 2);
        assert_eq!(j["counterexample"][1]["value"], "<{},{}>");
    }
}
