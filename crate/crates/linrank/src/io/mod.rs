//! Bit-exact textual formats: the inequality expression language,
//! common-information hypothesis declarations, rank-vector lines, matrix
//! files, and tree/forest specification files.
//!
//! All formats are ASCII and line-oriented; `#` starts a comment.

mod expr_parser;
mod files;
mod span;

pub use expr_parser::{
    parse_expression, parse_expression_in, parse_inequality, parse_inequality_in,
    parse_statement, parse_statement_in, terms_to_expr, ParsedStatement, Relation,
};
pub use files::{
    format_matrices, format_rank_vector, parse_forest_spec, parse_hypotheses, parse_matrices,
    parse_rank_vector, HypothesisDecl,
};
pub use span::SourceSpan;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {span}: {message}")]
    Syntax { message: String, span: SourceSpan },
    #[error("unknown variable `{name}` at {span}")]
    UnknownVariable { name: String, span: SourceSpan },
    #[error("invalid universe: {0}")]
    BadUniverse(String),
    #[error("line {line}: expected {expected} entries, got {got}")]
    WrongCount {
        line: u32,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: negative entry")]
    NegativeEntry { line: u32 },
    #[error("redeclaration of `{name}` at {span}")]
    Redeclaration { name: String, span: SourceSpan },
}

impl ParseError {
    pub(crate) fn syntax(message: impl Into<String>, span: SourceSpan) -> Self {
        ParseError::Syntax {
            message: message.into(),
            span,
        }
    }

    /// The position the error points at, when it carries one.
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            ParseError::Syntax { span, .. } | ParseError::UnknownVariable { span, .. } => {
                Some(*span)
            }
            ParseError::Redeclaration { span, .. } => Some(*span),
            _ => None,
        }
    }
}
