use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Error conditions surfaced by the counting and analytic operations.
#[derive(Debug)]
pub enum Error {
    /// An argument violated a documented precondition.
    InvalidArgument(String),
    /// The request would exceed the configured memory or size budget.
    ResourceLimit(String),
    /// A prime table does not reach far enough for the requested range.
    InsufficientPrimes { need: u64, have: u64 },
    /// An exact integer comparison left 128-bit range.
    Overflow(String),
    /// The requested parameter combination is not supported by the method.
    UnsupportedCombination(String),
    /// A series or product tail cannot be brought below the tolerance.
    PrecisionUnreachable { tail: f64, tol: f64, hint: String },
    /// An iterative solver failed to converge.
    NonConvergence {
        iterations: usize,
        last: f64,
        residual: f64,
    },
    /// I/O failure, annotated with the path involved.
    Io { path: String, source: std::io::Error },
    /// A cache or report file did not match the expected format.
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Self::ResourceLimit(msg) => write!(f, "resource budget exceeded: {msg}"),
            Self::InsufficientPrimes { need, have } => {
                write!(f, "prime table reaches {have}, need at least {need}")
            }
            Self::Overflow(msg) => write!(f, "128-bit overflow: {msg}"),
            Self::UnsupportedCombination(msg) => {
                write!(f, "unsupported combination: {msg}")
            }
            Self::PrecisionUnreachable { tail, tol, hint } => {
                write!(f, "tail estimate {tail:.3e} exceeds tolerance {tol:.3e}; {hint}")
            }
            Self::NonConvergence {
                iterations,
                last,
                residual,
            } => write!(
                f,
                "no convergence after {iterations} iterations (last {last:.6e}, residual {residual:.3e})"
            ),
            Self::Io { path, source } => write!(f, "{path}: {source}"),
            Self::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}
