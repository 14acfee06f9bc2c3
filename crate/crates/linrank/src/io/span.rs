//! Source positions for parser diagnostics. 1-based lines and columns.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub col_start: u32,
    pub col_end: u32,
}

impl SourceSpan {
    pub fn at(line: u32, col: u32) -> Self {
        Self {
            line,
            col_start: col,
            col_end: col,
        }
    }

    pub fn range(line: u32, col_start: u32, col_end: u32) -> Self {
        debug_assert!(col_end >= col_start);
        Self {
            line,
            col_start,
            col_end,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.col_end > self.col_start {
            write!(f, "{}:{}-{}", self.line, self.col_start, self.col_end)
        } else {
            write!(f, "{}:{}", self.line, self.col_start)
        }
    }
}
