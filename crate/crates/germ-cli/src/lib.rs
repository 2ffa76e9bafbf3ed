//! Expression front end for the local-geometry toolkit: a small grammar for
//! scalars, series, diffeomorphisms, vector fields, curves, and groups, plus
//! subcommand dispatch producing deterministic JSON reports.

pub mod lexer;
pub mod parser;
pub mod report;
pub mod run;
pub mod value;

use std::fmt;

/// A user-facing diagnostic with a source position (0:0 when the problem is
/// not tied to a location in the input text).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diag {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

impl Diag {
    pub fn new(line: u32, col: u32, msg: impl Into<String>) -> Diag {
        Diag { line, col, msg: msg.into() }
    }
}

impl fmt::Display for Diag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "error: {}", self.msg)
        } else {
            write!(f, "error at {}:{}: {}", self.line, self.col, self.msg)
        }
    }
}

impl std::error::Error for Diag {}
