use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DIMENSION_MISMATCH: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("NONNEGATIVE_MODE: creation factor with mode {0}")]
    NonnegativeMode(i64),
    #[error("MIXED_CHARGE: vector has terms of different charges")]
    MixedCharge,
    #[error("ZERO_VECTOR: charge of the zero vector is undefined")]
    ZeroVector,
    #[error("UNDECIDED: search bound exhausted")]
    Undecided,
    #[error("INVALID_ISOMETRY")]
    InvalidIsometry,
    #[error("COCYCLE_UNDEFINED: {0}")]
    CocycleUndefined(String),
    #[error("NONINTEGRAL_SHIFT: z-power {0} is not an integer")]
    NonintegralShift(String),
    #[error("NONINTEGRAL_WEIGHT: {0}")]
    NonintegralWeight(String),
    #[error("BAD_CHARGE: {0}")]
    BadCharge(String),
    #[error("TAG_MISMATCH")]
    TagMismatch,
    #[error("OUT_OF_BASE_RING: {0}")]
    OutOfBaseRing(String),
    #[error("MISSING_BASE_PAIRING: {0}")]
    MissingBasePairing(String),
    #[error("INCONSISTENT: {0}")]
    Inconsistent(String),
    #[error("INVALID_LATTICE: {0}")]
    InvalidLattice(String),
    #[error("DEGENERATE: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
