use thiserror::Error;

/// Errors surfaced by every stage of the construction.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file (JSON or alist).
    #[error("format error: {0}")]
    Format(String),

    /// Matrix dimensions disagree with the declared sizes.
    #[error("shape mismatch: {what} is {found}, expected {expected}")]
    Shape {
        what: String,
        found: usize,
        expected: usize,
    },

    /// An X check and a Z check overlap on an odd number of qubits.
    #[error("commutation: X check {x} and Z check {z} share an odd number of qubits {shared:?}")]
    NotCommuting {
        x: usize,
        z: usize,
        shared: Vec<usize>,
    },

    /// A structural invariant of an input object does not hold.
    #[error("validation: {0}")]
    Validation(String),

    /// An exhaustive search was requested above its configured limit.
    #[error("refusing {what}: size {size} exceeds limit {limit}")]
    Threshold {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("no logical operators (k = 0)")]
    NoLogicals,

    /// A property the construction guarantees was found violated.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
