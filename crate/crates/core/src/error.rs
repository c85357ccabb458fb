use std::path::PathBuf;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("grade {grade} out of range for ambient dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("ambient dimension {0} is not supported (1..={max})", max = crate::clifford::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {0:?} is not on the unit sphere")]
    NotUnit(Vec<f64>),

    #[error("point is too close to the origin (norm {0:e})")]
    NearSingularity(f64),

    #[error("interior point has norm {norm}, must be below {limit}")]
    TooCloseToBoundary { norm: f64, limit: f64 },

    #[error("quadrature exact to degree {available} but degree {required} is required")]
    QuadratureTooWeak { required: usize, available: usize },

    #[error("basis element {index} is numerically dependent (pivot {pivot:e} vs leading {leading:e})")]
    DependentElement {
        index: usize,
        pivot: f64,
        leading: f64,
    },

    #[error("expected a {expected} basis, got {actual}")]
    WrongSpace {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("input is not {kind} monogenic (residual {residual:e})")]
    NotMonogenic { kind: &'static str, residual: f64 },

    #[error("coefficient index (m={m}, k={k}) is outside the basis")]
    UnknownIndex { m: usize, k: usize },

    #[error("integrity check failed for {path}: {reason}")]
    Integrity { path: PathBuf, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
