//! Crate-wide error type.
//!
//! Variants map onto the CLI exit codes: config errors exit 2, numerical
//! failures exit 3, I/O and parse errors exit 4.

use std::fmt;
use std::io;

#[derive(Debug)]
pub enum Error {
    /// Incompatible or invalid matrix/vector dimensions.
    Dimension(String),
    /// Invalid configuration or parameters.
    Config(String),
    /// Iterative solver failed to meet its certificate; carries the final
    /// duality gap when the solver can compute one.
    Convergence { what: String, gap: f64 },
    /// Numerically rank-deficient least-squares system; carries the number
    /// of columns in the offending system.
    SingularSystem { cols: usize },
    /// A cluster requested more directions than the remaining numerical rank.
    RankShortfall { requested: usize, available: usize },
    /// Internal tracker invariant violated; unrecoverable.
    Invariant(String),
    /// Error while processing a specific frame.
    Frame { t: usize, source: Box<Error> },
    /// Malformed input file.
    Parse { path: String, line: usize, msg: String },
    Io(io::Error),
}

impl Error {
    pub fn frame(t: usize, source: Error) -> Self {
        Error::Frame {
            t,
            source: Box::new(source),
        }
    }

    /// CLI exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Dimension(_)
            | Error::Convergence { .. }
            | Error::SingularSystem { .. }
            | Error::RankShortfall { .. }
            | Error::Invariant(_) => 3,
            Error::Frame { source, .. } => source.exit_code(),
            Error::Parse { .. } | Error::Io(_) => 4,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(msg) => write!(f, "dimension error: {msg}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Convergence { what, gap } => {
                write!(f, "{what} did not converge (duality gap {gap:.3e})")
            }
            Error::SingularSystem { cols } => {
                write!(f, "rank-deficient least-squares system ({cols} columns)")
            }
            Error::RankShortfall {
                requested,
                available,
            } => write!(
                f,
                "cluster requested {requested} directions but only {available} remain"
            ),
            Error::Invariant(msg) => write!(f, "internal invariant violated: {msg}"),
            Error::Frame { t, source } => write!(f, "frame {t}: {source}"),
            Error::Parse { path, line, msg } => {
                write!(f, "parse error in {path} at line {line}: {msg}")
            }
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Frame { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
