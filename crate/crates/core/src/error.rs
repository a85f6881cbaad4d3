use thiserror::Error;

/// Errors raised by the library. Verification failures are reported through
/// verdict/report values, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for floor {floor}")]
    IndexOutOfRange { floor: u32, index: u64 },

    #[error("floor {floor} exceeds the limit {limit}")]
    FloorTooLarge { floor: u32, limit: u32 },

    #[error("vertex ({floor},{index}) has no right neighbour")]
    NoRightNeighbour { floor: u32, index: u64 },

    #[error("value {0} is outside the unit interval")]
    OutsideUnitInterval(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("matrix is not in the positive unimodular cone")]
    NotInCone,

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid ideal specification: {0}")]
    InvalidIdeal(String),

    #[error("not enough partial quotients to resolve floor {floor}")]
    InsufficientTerms { floor: u32 },

    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: u32, right: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inadmissible level transition at floor {floor}: {reason}")]
    Inadmissible { floor: u32, reason: String },

    #[error("trace candidate invalid: {0}")]
    InvalidCandidate(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
