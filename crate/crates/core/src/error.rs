use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a precondition (shape, range, ambient mismatch...).
    #[error("invalid input: {0}")]
    Input(String),
    /// A surgery matrix with zero determinant.
    #[error("degenerate surgery matrix: {0}")]
    Degenerate(String),
    /// Exhaustive enumeration would exceed the configured cap.
    #[error("enumeration cap exceeded: {what} has {size} elements, cap is {cap}")]
    CapExceeded { what: String, size: String, cap: usize },
    /// Two independent computations disagreed. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
