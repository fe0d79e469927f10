use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..{n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} exceeds the cap of {limit}")]
    CapExceeded { what: String, limit: u128 },

    #[error("value {value} at position {position} exceeds bound m = {m}")]
    OutOfBounds { position: usize, value: String, m: u64 },

    #[error("invalid value for mode {mode}: {detail}")]
    InvalidForMode { mode: String, detail: String },

    #[error("permutation {0} is not a linear extension of the pile poset")]
    NotLinearExtension(String),

    #[error("relation set contains a cycle through {0}")]
    CyclicRelation(usize),

    #[error("cannot convolve {left} with {right}")]
    MixedModels { left: String, right: String },

    #[error("model {0} is not supported here")]
    UnsupportedModel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
