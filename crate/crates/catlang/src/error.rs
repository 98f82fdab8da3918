//! Errors for the whole pipeline. Every variant of the source-facing
//! errors carries a span pointing inside the offending input.

use crate::token::Span;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatlangError {
    #[error("lex error at {line}:{col}: {message}")]
    Lex { line: u32, col: u32, message: String },
    #[error("parse error at {line}:{col}: found {found}, expected {}", expected.join(" | "))]
    Parse {
        line: u32,
        col: u32,
        found: String,
        expected: Vec<String>,
    },
    #[error("name clash at {line}:{col}: {kind} `{name}` is already defined")]
    NameClash {
        line: u32,
        col: u32,
        kind: &'static str,
        name: String,
    },
    #[error("unresolved reference at {line}:{col}: no {kind} named `{name}`")]
    UnresolvedReference {
        line: u32,
        col: u32,
        kind: &'static str,
        name: String,
    },
    #[error("arity error at {line}:{col}: {message}")]
    Arity { line: u32, col: u32, message: String },
    #[error("error at {line}:{col}: {message}")]
    Semantic { line: u32, col: u32, message: String },
}

impl CatlangError {
    pub fn lex(span: Span, message: impl Into<String>) -> Self {
        CatlangError::Lex {
            line: span.line,
            col: span.col,
            message: message.into(),
        }
    }

    pub fn unresolved(span: Span, kind: &'static str, name: impl Into<String>) -> Self {
        CatlangError::UnresolvedReference {
            line: span.line,
            col: span.col,
            kind,
            name: name.into(),
        }
    }

    pub fn clash(span: Span, kind: &'static str, name: impl Into<String>) -> Self {
        CatlangError::NameClash {
            line: span.line,
            col: span.col,
            kind,
            name: name.into(),
        }
    }

    pub fn arity(span: Span, message: impl Into<String>) -> Self {
        CatlangError::Arity {
            line: span.line,
            col: span.col,
            message: message.into(),
        }
    }

    pub fn semantic(span: Span, message: impl Into<String>) -> Self {
        CatlangError::Semantic {
            line: span.line,
            col: span.col,
            message: message.into(),
        }
    }

    /// The position the error points at.
    pub fn position(&self) -> (u32, u32) {
        match self {
            CatlangError::Lex { line, col, .. }
            | CatlangError::Parse { line, col, .. }
            | CatlangError::NameClash { line, col, .. }
            | CatlangError::UnresolvedReference { line, col, .. }
            | CatlangError::Arity { line, col, .. }
            | CatlangError::Semantic { line, col, .. } => (*line, *col),
        }
    }
}
