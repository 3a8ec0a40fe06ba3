use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The HNN datum is unusable (singular matrix, zero parameter, ...).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("syntax error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// A requested radius exceeds the configured enumeration bound.
    #[error("resource bound exceeded: requested {requested}, bound is {bound}")]
    Resource { requested: usize, bound: usize },

    #[error("invalid input: {0}")]
    Input(String),

    /// No explicit affine witness is available for this group.
    #[error("unsupported witness regime: {0}")]
    UnsupportedWitness(String),
}
