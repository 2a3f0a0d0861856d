use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a ring is refused when constructing a [`crate::Polygon`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvalidPolygon {
    #[error("ring has {0} distinct vertices, need at least 3")]
    TooFewVertices(usize),
    #[error("ring has non-finite coordinates")]
    NonFinite,
    #[error("ring encloses zero area")]
    ZeroArea,
    #[error("ring self-intersects between edges {0} and {1}")]
    SelfIntersecting(usize, usize),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polygon {id}: {reason}")]
    InvalidPolygon { id: u64, reason: InvalidPolygon },

    #[error("clipping failed for polygons {a} and {b}: intersection area {area} outside [0, {bound}]")]
    Clipping { a: u64, b: u64, area: f64, bound: f64 },

    #[error("polygon {id} exceeded {max_attempts} attempts in signature slot {slot}")]
    MaxAttemptsExceeded { id: u64, slot: usize, max_attempts: u64 },

    #[error("polygon {id} extends outside the sampling domain")]
    OutsideDomain { id: u64 },

    #[error("duplicate polygon id {0}")]
    DuplicateId(u64),

    #[error("unknown polygon id {0}")]
    UnknownId(u64),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("signature length {got} does not match index length {expected}")]
    SignatureLength { expected: usize, got: usize },

    #[error("index/config mismatch: {0}")]
    ConfigMismatch(String),

    #[error("corrupt index file: {0}")]
    CorruptIndex(String),

    #[error("unsupported index format version {0}")]
    VersionMismatch(u32),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] io::Error),
}

impl Error {
    /// Stable machine-readable class name, printed by the command-line tool on failure.
    pub fn class(&self) -> &'static str {
        match self {
            Error::InvalidPolygon { .. } => "invalid_polygon",
            Error::Clipping { .. } => "clipping",
            Error::MaxAttemptsExceeded { .. } => "max_attempts",
            Error::OutsideDomain { .. } => "outside_domain",
            Error::DuplicateId(_) => "duplicate_id",
            Error::UnknownId(_) => "unknown_id",
            Error::EmptyDataset => "empty_dataset",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::SignatureLength { .. } => "signature_length",
            Error::ConfigMismatch(_) => "config_mismatch",
            Error::CorruptIndex(_) => "corrupt_index",
            Error::VersionMismatch(_) => "version_mismatch",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}
