use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("vector is not tangent at base point (inner product {inner})")]
    NotTangent { inner: f64 },

    #[error("unsupported dimension d = {0}")]
    UnsupportedDimension(usize),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("under-resolved grid for {what}: need at least {required} points, got {given}")]
    UnderResolved {
        what: &'static str,
        required: usize,
        given: usize,
    },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("matrix of {bytes} bytes exceeds the {cap} byte cap; use a larger step or a smaller lambda")]
    MatrixTooLarge { bytes: usize, cap: usize },

    #[error("no lattice points on the circle m^2 + n^2 = {0}")]
    EmptyCircle(u64),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
