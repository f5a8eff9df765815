use thiserror::Error;

/// Errors raised by the engine.
///
/// `Internal` is reserved for outcomes that the underlying mathematics rules
/// out; seeing one means the implementation is wrong, not the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("law violated: {0}")]
    Law(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search guard exceeded while enumerating {what} (limit {limit})")]
    GuardExceeded { what: &'static str, limit: u64 },

    #[error("hom-set {hom} has a normal form of length {bound}; not certified finite")]
    NotFinite { hom: String, bound: usize },

    #[error("rewriting system is not complete")]
    Incomplete,

    #[error("internal error (contradicts a theorem): {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
