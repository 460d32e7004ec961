use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// The coefficient table does not reach the length the computation needs.
    #[error("incomplete data: need coefficients up to n = {required}, table has {available}")]
    IncompleteData { required: usize, available: usize },

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("operation requires an automorphic coefficient table: {0}")]
    NonAutomorphic(String),

    #[error("kernel specification does not converge: {0}")]
    NonConvergent(String),

    #[error("cannot construct family: {0}")]
    Construction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
