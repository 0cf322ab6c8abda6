use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    /// The operation needs a polynomial of degree at least one.
    #[error("expected a polynomial of degree >= 1, got `{0}`")]
    NonPositiveDegree(String),

    #[error("degree {degree} exceeds the configured cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("matrix dimension must be positive")]
    ZeroDimension,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular: no order exists")]
    Singular,

    #[error("no order found up to the bound {bound}")]
    OrderBoundExceeded { bound: u64 },

    #[error("order undefined: `{0}` has a repeated factor, so its Berlekamp matrix is singular")]
    OrderUndefined(String),

    #[error("integer overflow computing lcm")]
    LcmOverflow,

    #[error("requested {requested} irreducible polynomials of degree {degree}, but only {available} exist")]
    NotEnoughIrreducibles {
        degree: u64,
        requested: u64,
        available: String,
    },

    #[error("corollary gives no witness here: {0}")]
    NoCorollaryWitness(String),

    #[error("no verdict: {0}")]
    Undecided(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
