use thiserror::Error;

use crate::ktype::KType;
use crate::module::BasisIndex;

pub type Result<T> = std::result::Result<T, Su21Error>;

#[derive(Debug, Error)]
pub enum Su21Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("vertex system at V({n},{m}) is underdetermined without a prescribed ad product")]
    UnderdeterminedVertex { n: i64, m: i64 },

    #[error("truncation max_n={max_n} lies below the W vertex dimension r={r}")]
    EmptyTruncation { r: i64, max_n: i64 },

    #[error("basis index {0} is not part of the truncated module")]
    InvalidBasisIndex(BasisIndex),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("norm recursion disagrees at {ktype}: {first} vs {second}")]
    InconsistentGauge { ktype: KType, first: String, second: String },

    #[error("norm at {ktype} is not a positive rational ({value})")]
    NonPositiveNorm { ktype: KType, value: String },

    #[error("region anchored at {anchor} does not lie in the ambient cone of 2t={two_t}")]
    RegionMismatch { anchor: KType, two_t: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
