use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator in rational {num}/0")]
    ZeroDenominator { num: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("binomial coefficient C({n}, {m}) is outside the supported range 0 <= m <= n + 1")]
    BinomialRange { n: i64, m: i64 },

    #[error("invalid combination context: N = {n}, R = {r} (need 1 <= R <= N)")]
    CombinationContext { n: usize, r: usize },

    #[error("invalid combination {indices:?} for N = {n}, R = {r}: {reason}")]
    InvalidCombination {
        indices: Vec<usize>,
        n: usize,
        r: usize,
        reason: &'static str,
    },

    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: u64, max: u64 },

    #[error("unknown built-in case {0} (expected 1, 2, 3 or 4)")]
    UnknownCase(u32),

    #[error("invalid case configuration: {0}")]
    Config(String),

    #[error("symmetric group degree {0} unsupported (expected 1..=8)")]
    SymmetricDegree(usize),

    #[error("weyl element has {got} factor permutations of degrees {degrees:?}; case expects {expected:?}")]
    WeylDegree {
        got: usize,
        degrees: Vec<usize>,
        expected: Vec<usize>,
    },

    #[error("rank parameter R = {r} outside 1..={max}")]
    RankParameter { r: usize, max: usize },

    #[error("cannot allocate visited array of {bytes} bytes for {count} combinations")]
    Allocation { bytes: usize, count: u64 },

    #[error("golden table: {0}")]
    Golden(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
