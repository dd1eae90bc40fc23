//! File formats and command plumbing for the `vilenkin` binary.
//!
//! Everything observable lives here so integration tests can exercise the
//! exact serialization the binary ships: JSON schemas for masks, function
//! tables, verification reports and pattern catalogs, plus CSV export of
//! value tables. JSON output is deterministic — struct-order keys and
//! shortest round-trip float formatting — so identical inputs produce
//! byte-identical files.

pub mod formats;

use std::fmt;

/// Errors split by exit-code class: usage/validation problems exit 2,
/// I/O and parse failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vilenkin_core::Error> for CliError {
    fn from(err: vilenkin_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Io(format!("JSON parse failure: {err}"))
    }
}
