use std::fmt;

use privtrade_core::Error;

/// Command failure, each variant with a stable process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad command line (exit 1).
    Usage(String),
    /// Input file is not a scenario document (exit 2).
    Parse(String),
    /// A value is out of range; the message names the field (exit 3).
    Validation(String),
    /// The computation did not produce a result (exit 4).
    Numeric(String),
    /// Reading or writing a file failed (exit 5).
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Numeric(_) => 4,
            Failure::Io(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            Failure::Usage(m) => ("usage", m),
            Failure::Parse(m) => ("parse error", m),
            Failure::Validation(m) => ("validation error", m),
            Failure::Numeric(m) => ("numeric failure", m),
            Failure::Io(m) => ("i/o error", m),
        };
        write!(f, "{kind}: {msg}")
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Validation { .. } | Error::Domain { .. } => Failure::Validation(msg),
            Error::Usage(_) => Failure::Usage(msg),
            Error::Degenerate { .. }
            | Error::NumericFailure(_)
            | Error::Inapplicable(_)
            | Error::UndefinedRatio(_) => Failure::Numeric(msg),
        }
    }
}
