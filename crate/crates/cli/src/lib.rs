//! Library half of the `nuclear` command-line tool: argument parsing into a
//! [`Plan`], plan execution against `nuclear-core`, and the CSV/JSON report
//! format.

pub mod cache;
pub mod exec;
pub mod plan;
pub mod report;

pub use exec::{execute_plan, run_validation};
pub use plan::{build_plan, Command, OutputFormat, Plan};
pub use report::{CompareReport, Row};

/// CLI failure modes, mapped to exit codes in `main`.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values: exit code 1.
    Usage(String),
    /// Computation failure under --strict, or failed validation: exit 2.
    Computation(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(msg) => write!(f, "usage error: {msg}"),
            Self::Computation(msg) => write!(f, "computation error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}
