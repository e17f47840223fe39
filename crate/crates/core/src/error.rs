use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown series `{0}`")]
    UnknownSeries(String),

    #[error("rank {rank} is not valid for series {series}")]
    InvalidRank { series: String, rank: usize },

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("weight has {got} coordinates, expected {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("point {0:?} is not in the closed fundamental chamber")]
    NotInChamber(Vec<String>),

    #[error("Weyl group enumeration exceeded the cap of {cap} elements")]
    WeylCapExceeded { cap: usize },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("unsupported group for this operation: {0}")]
    Unsupported(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("malformed partition {0:?}")]
    MalformedPartition(Vec<i64>),

    #[error("invalid face {0:?}")]
    InvalidFace(Vec<usize>),

    #[error("invalid tangent sample: {0}")]
    InvalidSample(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
