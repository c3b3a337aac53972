use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order q = {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedField(u32),
    #[error("predicted group order {order} exceeds bound {bound}")]
    OrderBoundExceeded { order: u128, bound: u64 },
    #[error("size bound exceeded: {0}")]
    SizeBoundExceeded(String),
    #[error("no admissible prime below {0}")]
    SearchExhausted(u64),
    #[error("eigenspace splitting stalled on a {dim}-dimensional common eigenspace (p = {p})")]
    SplitFailure { dim: usize, p: u64 },
    #[error("residue {value} mod {p} has no representative in [0, {bound}]")]
    LiftOutOfRange { value: u64, bound: u64, p: u64 },
    #[error("invariant-function algebra has {size} basis elements, bound is {bound}")]
    BasisBoundExceeded { size: usize, bound: usize },
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
