//! Command-line front end for equitable-partition quotient analysis.
//!
//! The binary reads plain-text matrix and partition files, wires them into
//! the analyses from `equispec-core`, and emits deterministic text or JSON
//! reports. Exit codes are a stable contract: 0 for success / full
//! capture, 3 for a negative analysis verdict, 2 for input errors.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{
    cmd_analyze, cmd_construct, cmd_enlarge, cmd_graph, cmd_interlace, cmd_refine, CmdOutput,
    GlobalOpts, EXIT_ANALYSIS_NEGATIVE, EXIT_INPUT_ERROR,
};
pub use report::AnalysisDocument;

/// Errors that terminate a command with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input file; `line` is 1-based when known.
    Parse {
        line: Option<usize>,
        message: String,
    },
    /// Filesystem problem.
    Io { path: String, message: String },
    /// Invalid command-line usage.
    Usage(String),
    /// Error raised by the analysis library.
    Core(equispec_core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse {
                line: Some(line),
                message,
            } => write!(f, "parse error at line {line}: {message}"),
            CliError::Parse {
                line: None,
                message,
            } => write!(f, "parse error: {message}"),
            CliError::Io { path, message } => write!(f, "cannot read `{path}`: {message}"),
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<equispec_core::Error> for CliError {
    fn from(e: equispec_core::Error) -> Self {
        CliError::Core(e)
    }
}
