use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty quotient block")]
    EmptyInput,
    #[error("partial quotient at position {position} is not positive")]
    NonPositiveQuotient { position: usize },
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("Jacobi symbol needs an odd positive modulus")]
    EvenModulus,
    #[error("reciprocity sign needs odd positive arguments")]
    EvenArgument,
    #[error("no even period L = d*l with d <= {d_max} satisfies D_L = I mod 4")]
    NoPeriodFound { d_max: usize },
    #[error(
        "L = {period} is not an even multiple of l that is a Jacobi period with D_L = I mod 4"
    )]
    InvalidPeriod { period: usize },
    #[error("D_L is not congruent to the identity mod 4 for L = {period}")]
    NotIdentityMod4 { period: usize },
    #[error("2-adic precision of {bits} bits exhausted")]
    PrecisionExhausted { bits: u32 },
    #[error("convergent {index} is not critical")]
    NotCritical { index: u64 },
    #[error("cascade index overflowed u64")]
    IndexOverflow,
    #[error("window of length {len} is too short (need at least {needed})")]
    WindowTooShort { len: usize, needed: usize },
    #[error("oracle disagrees with classification: {0}")]
    OracleMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
