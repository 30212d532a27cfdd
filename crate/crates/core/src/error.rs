use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the arithmetic, class-number and table routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field size {0} is not an odd prime")]
    InvalidField(u64),

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("operands live over different base fields")]
    FieldMismatch,

    #[error("{0}: input must be nonzero")]
    ZeroInput(&'static str),

    #[error("{0} is not a monic irreducible polynomial")]
    NotIrreducible(String),

    #[error("{0} is a nonzero square: split quadratic algebra, not a field")]
    SquareDiscriminant(String),

    #[error("{0} is not imaginary (the infinite place splits)")]
    NotImaginary(String),

    #[error("{what} {poly} must be squarefree")]
    NotSquarefree { what: &'static str, poly: String },

    #[error("{what} {poly} must be monic")]
    NotMonic { what: &'static str, poly: String },

    #[error("{0} and {1} must be coprime")]
    NotCoprime(String, String),

    #[error("frak_d {0} must have even degree")]
    OddDegree(String),

    #[error("deg(d⁻n⁻) = 0 violates level assumption")]
    DegenerateLevel,

    #[error("n⁻ = {0} must have a positive even number of prime factors")]
    DefiniteLevelParity(String),

    #[error("d⁻n⁻ = {0} has an odd number of prime factors")]
    RamificationParity(String),

    #[error("max_deg {requested} exceeds the configured ceiling {ceiling}")]
    TableTooLarge { requested: usize, ceiling: usize },

    #[error("oracle bound too small: {0}; raise bound")]
    RaiseBound(String),

    #[error("oracle precision insufficient: {0}; raise precision")]
    RaisePrecision(String),

    #[error("{0}")]
    Domain(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
