//! Command-line front end: text documents, engine dispatch and reports.

pub mod commands;
pub mod document;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("{0}")]
    Usage(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Engine(#[from] goodpair::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Text for standard output and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub text: String,
}

/// Exit code for errors of any kind.
pub const EXIT_ERROR: i32 = 2;
