use thiserror::Error;

/// Errors surfaced by the algebra engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no linear recurrence of order <= {max_order} fits; first residual at term {position}")]
    NoRecurrence { max_order: usize, position: usize },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("window insufficient: {0}")]
    WindowInsufficient(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
