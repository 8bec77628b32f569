//! File formats, the check registry, and the `jlbk` command-line tool.

pub mod checks;
pub mod commands;
pub mod elements;
pub mod error;
pub mod report;
pub mod spec;

pub use commands::run_command;
pub use error::CliError;
pub use report::VerificationReport;
pub use spec::{parse_spec, ProblemSpec};
