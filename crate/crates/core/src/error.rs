use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no solution to {coeff} u ≡ {rhs} (mod {modulus})")]
    NoSolution { coeff: String, rhs: String, modulus: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(String),

    #[error("group of order {order} exceeds the element bound {bound}")]
    BoundExceeded { order: u128, bound: u128 },

    #[error("{delta} does not divide the group order {order}")]
    NotADivisor { delta: u128, order: u128 },

    #[error("{0} is not contained in {1}")]
    NotContained(String, String),

    /// A proved divisibility or solvability property failed; this is a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
