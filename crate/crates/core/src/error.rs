use thiserror::Error;

/// Errors produced by the library. Each variant maps onto one failure class
/// so that front ends can choose an exit status without string matching.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation (non-positive
    /// mass, field step, grid origin, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data violate a structural invariant. `index` points at the
    /// offending data point when one can be identified.
    #[error("data error{}: {message}", .index.map(|i| format!(" at point {i}")).unwrap_or_default())]
    Data { message: String, index: Option<usize> },

    /// A text or JSON input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// A physical analysis is not possible for this input, e.g. asking for
    /// the minimum of a purely repulsive curve.
    #[error("analysis error: {0}")]
    Analysis(String),

    /// An iterative numerical procedure did not converge.
    #[error("numerical error: {message} (after {iterations} iterations)")]
    Numerical { message: String, iterations: usize },

    /// A named item does not exist.
    #[error("not found: {0}")]
    NotFound(String),

    /// Unknown unit, bad option value or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn data(message: impl Into<String>, index: Option<usize>) -> Self {
        Error::Data { message: message.into(), index }
    }

    pub(crate) fn numerical(message: impl Into<String>, iterations: usize) -> Self {
        Error::Numerical { message: message.into(), iterations }
    }

    /// True for failures of a numerical or convergence nature, as opposed
    /// to bad user input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. } | Error::Analysis(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
