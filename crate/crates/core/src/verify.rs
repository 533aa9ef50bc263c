//! Exhaustive sweeps comparing the hidden-variable model with the oracles.
//!
//! Each sweep fans out over observables with rayon and collects results in
//! index order, so reports are identical from run to run.

use rayon::prelude::*;

use crate::classification::Classification;
use crate::error::Result;
use crate::lhv::{check_cnot_consistency, CnotConsistencyReport, LhvTable};
use crate::oracle::{ghz_classify, tableau_evolve, Circuit, StabilizerTableau, StateVector};
use crate::pauli::{PauliString, Phase};
use crate::protocol::{alice_flips, communication_cost, verify_consistency, ConsistencyReport, Partition};

/// Witnesses kept per sweep.
const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDisagreement {
    pub observable: PauliString,
    pub lhv: Classification,
    pub analytic: Classification,
    pub tableau: Classification,
    pub statevector: Option<Classification>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointSweep {
    pub n: usize,
    pub checked: usize,
    pub agreed: usize,
    pub statevector_checked: bool,
    /// Signed observables certain to give +1 and -1 (out of `2·4^n`).
    pub plus_certain: usize,
    pub minus_certain: usize,
    pub disagreements: Vec<JointDisagreement>,
}

impl JointSweep {
    pub fn passed(&self) -> bool {
        self.agreed == self.checked
            && self.plus_certain == 1 << self.n
            && self.minus_certain == 1 << self.n
    }
}

/// Compares the GHZ table against the analytic and tableau oracles (and the
/// state vector when `with_statevector`) on all `4^n` unsigned products.
pub fn sweep_joint(n: usize, with_statevector: bool) -> Result<JointSweep> {
    let table = LhvTable::ghz(n)?;
    let tableau = tableau_evolve(&Circuit::ghz(n)?)?;
    let state = if with_statevector {
        Some(StateVector::ghz(n)?)
    } else {
        None
    };
    let total = 4u64.pow(n as u32);
    let rows: Vec<(Classification, Option<JointDisagreement>)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let obs = PauliString::from_index(n, idx)?;
            let lhv = table.classify_joint(&obs)?;
            let analytic = ghz_classify(&obs)?;
            let tab = tableau.classify(&obs)?;
            let sv = state.as_ref().map(|s| s.classify(&obs)).transpose()?;
            let agree = lhv == analytic && lhv == tab && sv.is_none_or(|c| c == lhv);
            let disagreement = (!agree).then_some(JointDisagreement {
                observable: obs,
                lhv,
                analytic,
                tableau: tab,
                statevector: sv,
            });
            Ok((lhv, disagreement))
        })
        .collect::<Result<_>>()?;

    let mut sweep = JointSweep {
        n,
        checked: rows.len(),
        agreed: 0,
        statevector_checked: with_statevector,
        plus_certain: 0,
        minus_certain: 0,
        disagreements: Vec::new(),
    };
    for (class, disagreement) in rows {
        match disagreement {
            None => sweep.agreed += 1,
            Some(d) if sweep.disagreements.len() < MAX_WITNESSES => sweep.disagreements.push(d),
            Some(_) => {}
        }
        // P and -P: a certain outcome v for P gives -v for -P.
        if class.is_deterministic() {
            sweep.plus_certain += 1;
            sweep.minus_certain += 1;
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolSweep {
    pub n: usize,
    pub partitions: usize,
    pub observables: usize,
    /// Protocol executions (partitions × observables × assignments).
    pub runs: usize,
    pub consistent: usize,
    pub bit_counts_ok: bool,
    pub failures: Vec<ConsistencyReport>,
}

impl ProtocolSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.bit_counts_ok && self.consistent == self.partitions * self.observables
    }
}

/// Runs [`verify_consistency`] for every observable on every given partition.
pub fn sweep_protocol(n: usize, partitions: &[Partition]) -> Result<ProtocolSweep> {
    let table = LhvTable::ghz(n)?;
    let total = 4u64.pow(n as u32);
    let mut sweep = ProtocolSweep {
        n,
        partitions: partitions.len(),
        observables: total as usize,
        runs: 0,
        consistent: 0,
        bit_counts_ok: true,
        failures: Vec::new(),
    };
    for partition in partitions {
        let reports: Vec<ConsistencyReport> = (0..total)
            .into_par_iter()
            .map(|idx| verify_consistency(&table, partition, &PauliString::from_index(n, idx)?))
            .collect::<Result<_>>()?;
        for report in reports {
            sweep.runs += report.assignments;
            if report.bit_count != communication_cost(partition) {
                sweep.bit_counts_ok = false;
            }
            if report.passed {
                sweep.consistent += 1;
            } else if sweep.failures.len() < MAX_WITNESSES {
                sweep.failures.push(report);
            }
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationSweep {
    pub n: usize,
    /// Observables with an even number of Y letters.
    pub checked: usize,
    pub agreed: usize,
    pub witness: Option<PauliString>,
}

/// For singleton parties, the flip decided from `q_1⋯q_{n-1}` must match
/// "flip iff `q_1⋯q_n = -1`" on every observable with real `q_1⋯q_n`.
pub fn sweep_truncation(n: usize) -> Result<TruncationSweep> {
    let mut sweep = TruncationSweep {
        n,
        checked: 0,
        agreed: 0,
        witness: None,
    };
    for idx in 0..4u64.pow(n as u32) {
        let obs = PauliString::from_index(n, idx)?;
        if obs.y_count() % 2 != 0 {
            continue;
        }
        let qs: Vec<Phase> = obs
            .letters()
            .map(|l| if l == crate::pauli::Pauli::Y { Phase::I } else { Phase::ONE })
            .collect();
        let full = qs.iter().fold(Phase::ONE, |acc, &q| acc * q);
        let truncated = qs[..n - 1].iter().fold(Phase::ONE, |acc, &q| acc * q);
        sweep.checked += 1;
        if alice_flips(truncated) == (full == Phase::MINUS_ONE) {
            sweep.agreed += 1;
        } else {
            sweep.witness.get_or_insert(obs);
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauSweep {
    pub n: usize,
    pub generators: Vec<PauliString>,
    pub expected: Vec<PauliString>,
    /// Invariants held after every gate of the preparation circuit.
    pub commuting_and_independent: bool,
}

impl TableauSweep {
    pub fn passed(&self) -> bool {
        self.generators == self.expected && self.commuting_and_independent
    }
}

/// `⟨X…X, ZZI…I, ZIZ…I, …, ZI…IZ⟩`.
pub fn expected_ghz_generators(n: usize) -> Result<Vec<PauliString>> {
    let mut out = vec![PauliString::from_masks(n, mask(n), 0, Phase::ONE)?];
    for j in 2..=n {
        out.push(PauliString::from_masks(n, 0, 1 | (1 << (j - 1)), Phase::ONE)?);
    }
    Ok(out)
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

pub fn sweep_tableau(n: usize) -> Result<TableauSweep> {
    let circuit = Circuit::ghz(n)?;
    let mut tab = StabilizerTableau::initial(n)?;
    let mut invariants = tab.pairwise_commuting() && tab.rank() == n;
    for gate in circuit.gates() {
        tab = tab.apply(gate)?;
        invariants &= tab.pairwise_commuting() && tab.rank() == n;
    }
    Ok(TableauSweep {
        n,
        generators: tab.generators().to_vec(),
        expected: expected_ghz_generators(n)?,
        commuting_and_independent: invariants,
    })
}

pub fn cnot_rules() -> CnotConsistencyReport {
    check_cnot_consistency()
}
