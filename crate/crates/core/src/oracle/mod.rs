//! Ground truth that does not go through the hidden-variable table.

mod analytic;
mod statevector;
mod tableau;

pub use analytic::ghz_classify;
pub use statevector::{statevector_classify, StateVector, MAX_STATEVECTOR_QUBITS};
pub use tableau::{tableau_classify, tableau_evolve, Circuit, Gate, StabilizerTableau};

/// Which oracle to consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    Analytic,
    StateVector,
    Tableau,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Analytic => "analytic",
            OracleKind::StateVector => "statevector",
            OracleKind::Tableau => "tableau",
        }
    }
}
