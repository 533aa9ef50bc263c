//! Local hidden-variable simulation of Pauli-product measurements on n-qubit
//! GHZ states, supplemented by a linear amount of classical communication.
//!
//! * [`pauli`]: Pauli-group algebra with exact phases and H/CNOT conjugation.
//! * [`lhv`]: the hidden-variable table, its gate-update rules and read-out.
//! * [`protocol`]: multi-party local measurements with the sign-flip rule and bit accounting.
//! * [`oracle`]: independent ground truth (analytic classifier, state vector, stabilizer tableau).
//! * [`verify`]: exhaustive sweeps tying the pieces together.

pub mod classification;
pub mod error;
pub mod lhv;
pub mod oracle;
pub mod pauli;
pub mod protocol;
pub mod verify;

#[cfg(test)]
mod test_support;

pub use classification::Classification;
pub use error::{Error, Result};
pub use lhv::{Assignment, LhvEntry, LhvTable, Monomial, Row, SymbolicValue, VarSet};
pub use pauli::{Pauli, PauliString, Phase};
pub use protocol::{Partition, PartyReport, ProtocolRun, Transcript};
