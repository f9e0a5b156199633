//! Command-line front end for the bcqt simulator: argument parsing, the four
//! subcommands and the JSON/CSV report formats.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{execute, Exit};
pub use config::{Cli, Command, Format, InputSpec, Mode, RunConfig};
pub use report::{Record, Report, Summary, RECORD_COLUMNS};
