use std::fmt;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Incompatible or invalid matrix/vector shapes.
    Shape(String),
    /// Input violates a documented precondition (non-positive charge,
    /// coincident points, non-unit vector, ...).
    Domain(String),
    /// An iterative solver failed to converge within its budget.
    Convergence(String),
    /// A combinatorial size cap would be exceeded.
    CapExceeded(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence failure: {msg}"),
            Error::CapExceeded(msg) => write!(f, "cap exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
