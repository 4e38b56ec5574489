//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("field size {q} exceeds the configured bound {bound}")]
    DegreeTooLarge { q: u64, bound: u64 },
    #[error("zero input where a unit is required")]
    ZeroInput,
    #[error("norm parameter must be nonzero")]
    ZeroNorm,
    #[error("sigma is undefined at w = xi")]
    CoincidentInput,
    #[error("element has the wrong norm: {0}")]
    WrongNorm(String),
    #[error("matrix entry has a pole at the distinguished place: {0}")]
    IntegralityFailure(String),
    #[error("coordinate has a pole at t = 1")]
    PoleAtOne,
    #[error("substitution makes the denominator vanish identically")]
    DegenerateComposition,
    #[error("square multiplicities did not collapse 4-to-1: {0}")]
    DedupMismatch(String),
    #[error("document violates the complex schema: {0}")]
    SchemaViolation(String),
    #[error("edge involution has a fixed point or is inconsistent: {0}")]
    InvolutionBroken(String),
    #[error("requested size exceeds the configured bound ({what} = {got}, bound {bound})")]
    BoundExceeded {
        what: &'static str,
        got: usize,
        bound: usize,
    },
    #[error("relation transport failed at witness {0}")]
    TransportFailure(String),
    #[error("power-class lookup failed; configuration is corrupt")]
    InternalNonunit,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cell count disagrees with the closed formula: {0}")]
    CountMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
