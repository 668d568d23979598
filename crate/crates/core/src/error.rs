use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("contraction needs a pure Grassmann element, found a del factor")]
    NotPureGrassmann,

    #[error("coefficient product with negative index {0} is not supported")]
    NegativeIndex(i64),

    #[error("named element needs a nonempty subset or a del index")]
    EmptySubset,

    #[error("conformal index {index} exceeds the locality bound {bound}")]
    IndexTooLarge { index: u32, bound: u32 },

    #[error("element is not in the subalgebra generated by v^(N-1)a")]
    NotInSubalgebra,

    #[error("word is not an overlap of the two leading words: {0}")]
    InvalidOverlap(String),

    #[error("word is not in a reduced-word family: {0}")]
    NotInFamily(String),

    #[error("rule has zero polynomial")]
    ZeroRule,

    #[error("rule must be D-free: {0}")]
    DBearingRule(String),

    #[error("identity {name} expects {expected} elements, got {got}")]
    Arity {
        name: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
