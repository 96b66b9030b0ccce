use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: {n} qubits exceed the cap {cap}")]
    QubitCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("numerical contract violated: {0}")]
    NumericalContract(String),

    #[error("circuit parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CircuitError>;
