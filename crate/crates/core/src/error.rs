use thiserror::Error;

/// Errors produced by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("generator must have positive degree: {0}")]
    ConstantGenerator(String),

    #[error("affine map is singular")]
    SingularMap,

    #[error("top-degree syzygy in degree {degree} is not in the span of the Koszul relations")]
    SyzygyNotKoszul { degree: usize },

    #[error("input basis is linearly dependent")]
    DependentBasis,

    #[error("span is not closed under the bracket")]
    NotClosed,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
