//! Command-line front end for `bwcohom`: the workspace file format, its
//! loader, the commands and their reports.
//!
//! Exit codes: 0 success, 1 law or verification failure, 2 validation
//! failure, 3 parse, reference or I/O failure.

pub mod commands;
pub mod error;
pub mod export;
pub mod schema;
pub mod workspace;

pub use commands::{execute, Cli, Io};
pub use error::CliError;
