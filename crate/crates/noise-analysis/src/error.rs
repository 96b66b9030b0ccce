use matrix_core::MatrixError;
use sampling_core::SamplingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoiseError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),

    #[error(transparent)]
    Sampling(#[from] SamplingError),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

pub type Result<T> = std::result::Result<T, NoiseError>;
