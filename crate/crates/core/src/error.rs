use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The coefficient matrix of a linear system has no inverse.
    #[error("singular system")]
    Singular,
    /// Two routes that must agree exactly did not.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
