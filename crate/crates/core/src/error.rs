use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} must be a prime with 7 <= p < 2^31")]
    UnsupportedModulus(u64),

    #[error("extension degree {0} is not supported (expected 2 or 3)")]
    UnsupportedExtension(u32),

    #[error("extension degree k = {0} is out of range (expected 1..=3)")]
    UnsupportedDegree(u32),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("degenerate model: {0}")]
    Degenerate(&'static str),

    #[error("trace {trace} lies outside the Hasse window |t| <= {bound} for p = {p}")]
    HasseViolation { trace: i64, bound: u64, p: u64 },

    #[error("count {count} lies outside the Hasse-Weil-Serre window (upper bound {bound}, q = {q}, genus {genus})")]
    BoundViolation {
        count: i128,
        bound: u128,
        q: u128,
        genus: u32,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Malformed { line: u64, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal a counting bug rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::BoundViolation { .. } | Error::HasseViolation { .. }
        )
    }
}
