use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
    #[error("unknown ring `{0}` (expected Z, Q or Zmod:<p>)")]
    UnknownRing(String),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("variable counts differ: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("ambients differ: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("the empty monomial has no primitive root")]
    ZeroMonomial,
    #[error("slot {slot} is outside 1..={n}")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("index of weight {weight} vanishes in ambient n = {n}")]
    WeightExceedsAmbient { weight: u32, n: u32 },
    #[error("operation requires a finite ambient")]
    InfiniteAmbient,
    #[error("cannot truncate ambient {from} to larger size {to}")]
    TruncationTarget { from: String, to: u32 },
    #[error("polynomial has a nonzero constant term")]
    NonZeroConstantTerm,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("degree {degree} exceeds the number of variables {vars}")]
    DegreeTooLarge { degree: u32, vars: usize },
    #[error("operation requires the rationals, got {0}")]
    NotRational(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
