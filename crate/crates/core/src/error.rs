use thiserror::Error;

use crate::pauli::Phase;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit {qubit} out of range for a {n}-qubit system (indices are 1-based)")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("control and target must differ (both are qubit {0})")]
    SameQubit(usize),

    #[error("{n} qubits exceeds capacity of {max}")]
    Capacity { n: usize, max: usize },

    #[error("invalid Pauli string at position {position}: {reason}")]
    ParsePauli { position: usize, reason: String },

    #[error("{0} is not an observable (phase must be +1 or -1)")]
    NotObservable(String),

    #[error("CNOT precondition violated: row {row} has XYZ product {product}, expected +i with real X/Z and imaginary Y")]
    CnotPrecondition { row: usize, product: String },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("invalid circuit: {0}")]
    Circuit(String),

    #[error("tableau has rank {rank}, expected {n}")]
    RankDeficient { rank: usize, n: usize },

    #[error("unexpected expectation value {value} for {observable}")]
    UnexpectedExpectation { observable: String, value: f64 },

    #[error("assignment covers {got} variables, table needs {need}")]
    Assignment { got: usize, need: usize },
}

impl Error {
    pub(crate) fn cnot_precondition(row: usize, product: Phase, residual: bool) -> Self {
        let product = if residual {
            format!("{product}(non-constant)")
        } else {
            product.to_string()
        };
        Error::CnotPrecondition { row, product }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
