use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("polynomial is not weight-homogeneous")]
    Inhomogeneous,
    #[error("saturation did not stabilize after {0} steps")]
    SaturationCap(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not solvable: {0}")]
    NotSolvable(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
