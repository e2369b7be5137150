use thiserror::Error;

/// Errors produced by the combinatorics engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {family}{rank}: {reason}")]
    UnsupportedType {
        family: String,
        rank: usize,
        reason: String,
    },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {word:?} is not a reduced word for the longest element")]
    NotLongestWord { word: Vec<usize> },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("fundamental weight {level} carries value {value}, expected 0")]
    NotNormalized { level: usize, value: i64 },
    #[error("negative edge length {length} at leg {leg}")]
    EdgeInequality { leg: usize, length: i64 },
    #[error("entry {value} exceeds the input cap {cap}")]
    InputCap { value: i64, cap: i64 },
    #[error("negative entry {value} in a Lusztig datum")]
    NegativeEntry { value: i64 },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("assembly inconsistency at chamber weight {chamber}: {first} vs {second}")]
    Inconsistent {
        chamber: usize,
        first: i64,
        second: i64,
    },
    #[error("braid words {from:?} and {to:?} are not connected")]
    Disconnected { from: Vec<usize>, to: Vec<usize> },
    #[error("{count} BZ choices exceed the cap {cap}")]
    TooManyChoices { count: u128, cap: u128 },
    #[error("input is not a pseudo-Weyl polytope: {0}")]
    NotPseudoWeyl(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
