//! Local measurements by several parties with one bit per middle party.
//!
//! The qubits are split into ordered sets; set 1 belongs to Alice. Each party
//! multiplies the table cells for its own letters. A product carrying a factor
//! `i` (odd number of Y's) is reported with that factor divided out, and the
//! party's `q` is `i`; otherwise `q = 1`. Parties `2..l-1` send their `q` to
//! Alice, who flips her report iff `q_1⋯q_{l-1}` is `i` or `-1`. The last
//! party never needs to speak.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lhv::{discard_i, Assignment, LhvTable};
use crate::pauli::{PauliString, Phase};
use crate::classification::Classification;

/// Ordered split of qubits `1..=n` into disjoint, non-empty sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Partition("no sets given".into()));
        }
        let mut seen = BTreeSet::new();
        for (k, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::Partition(format!("set {} is empty", k + 1)));
            }
            for &q in set {
                if q == 0 || q > n {
                    return Err(Error::Partition(format!(
                        "qubit {q} is outside 1..={n}"
                    )));
                }
                if !seen.insert(q) {
                    return Err(Error::Partition(format!("qubit {q} appears twice")));
                }
            }
        }
        if let Some(missing) = (1..=n).find(|q| !seen.contains(q)) {
            return Err(Error::Partition(format!("qubit {missing} is not assigned")));
        }
        Ok(Partition { n, sets })
    }

    /// Every qubit on its own, in qubit order.
    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            sets: (1..=n).map(|q| vec![q]).collect(),
        }
    }

    /// Parses `"1,2|3|4,5"` and validates it against `n` qubits.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let sets = text
            .split('|')
            .map(|set| {
                set.split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        tok.parse::<usize>().map_err(|_| {
                            Error::Partition(format!("{tok:?} is not a qubit index"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    /// All set partitions of `1..=n` (Bell-number many), each listed with sets
    /// ordered by their smallest qubit so that Alice always holds qubit 1.
    pub fn all(n: usize) -> Vec<Partition> {
        fn extend(q: usize, n: usize, sets: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
            if q > n {
                out.push(Partition {
                    n,
                    sets: sets.clone(),
                });
                return;
            }
            for k in 0..sets.len() {
                sets[k].push(q);
                extend(q + 1, n, sets, out);
                sets[k].pop();
            }
            sets.push(vec![q]);
            extend(q + 1, n, sets, out);
            sets.pop();
        }
        let mut out = Vec::new();
        if n > 0 {
            extend(1, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Number of parties `l`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, set) in self.sets.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (m, q) in set.iter().enumerate() {
                if m > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{q}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Infers `n` as the largest index mentioned.
    fn from_str(text: &str) -> Result<Self> {
        let n = text
            .split(['|', ','])
            .filter_map(|t| t.trim().parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Self::parse(text, n)
    }
}

/// Bits sent for a partition into `l` sets: `max(0, l - 2)`.
pub fn communication_cost(partition: &Partition) -> usize {
    partition.len().saturating_sub(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartyReport {
    /// 1-based set index; set 1 is Alice.
    pub set_index: usize,
    /// Local product with any factor `i` divided out.
    pub raw_report: i8,
    /// `+i` when the local product was imaginary, `+1` otherwise.
    pub q: Phase,
    pub flipped: bool,
}

impl PartyReport {
    pub fn outcome(&self) -> i8 {
        if self.flipped {
            -self.raw_report
        } else {
            self.raw_report
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Message {
    pub sender: usize,
    pub q: Phase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub messages: Vec<Message>,
    pub bit_count: usize,
    /// `q_1⋯q_{l-1}` as seen by Alice.
    pub flip_product: Phase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolRun {
    pub reports: Vec<PartyReport>,
    pub transcript: Transcript,
}

impl ProtocolRun {
    pub fn outcomes(&self) -> Vec<i8> {
        self.reports.iter().map(PartyReport::outcome).collect()
    }

    pub fn product(&self) -> i8 {
        self.reports.iter().map(PartyReport::outcome).product()
    }

    pub fn flipped(&self) -> bool {
        self.reports.first().is_some_and(|r| r.flipped)
    }
}

fn check_inputs(table: &LhvTable, partition: &Partition, p: &PauliString) -> Result<()> {
    if partition.n() != table.n() {
        return Err(Error::DimensionMismatch {
            left: table.n(),
            right: partition.n(),
        });
    }
    if p.len() != table.n() {
        return Err(Error::DimensionMismatch {
            left: table.n(),
            right: p.len(),
        });
    }
    if p.phase() != Phase::ONE {
        return Err(Error::NotObservable(format!(
            "{p} (local measurement choices carry no sign)"
        )));
    }
    Ok(())
}

/// Each party's unflipped report and `q`.
pub fn local_reports(
    table: &LhvTable,
    partition: &Partition,
    p: &PauliString,
    assignment: &Assignment,
) -> Result<Vec<PartyReport>> {
    check_inputs(table, partition, p)?;
    if assignment.len() < table.n() {
        return Err(Error::Assignment {
            got: assignment.len(),
            need: table.n(),
        });
    }
    Ok(partition
        .sets()
        .iter()
        .enumerate()
        .map(|(k, set)| {
            let local = table.product_on(p, set);
            let q = if local.phase.is_imaginary() {
                Phase::I
            } else {
                Phase::ONE
            };
            PartyReport {
                set_index: k + 1,
                raw_report: discard_i(local.eval(assignment)),
                q,
                flipped: false,
            }
        })
        .collect())
}

/// Alice's rule: flip iff the truncated product is `i` or `-1`.
pub fn alice_flips(truncated_product: Phase) -> bool {
    truncated_product == Phase::I || truncated_product == Phase::MINUS_ONE
}

pub fn run_protocol(
    table: &LhvTable,
    partition: &Partition,
    p: &PauliString,
    assignment: &Assignment,
) -> Result<ProtocolRun> {
    let mut reports = local_reports(table, partition, p, assignment)?;
    let l = reports.len();
    let messages: Vec<Message> = reports
        .iter()
        .take(l.saturating_sub(1))
        .skip(1)
        .map(|r| Message {
            sender: r.set_index,
            q: r.q,
        })
        .collect();
    let flip_product = if l > 1 {
        messages.iter().fold(reports[0].q, |acc, m| acc * m.q)
    } else {
        Phase::ONE
    };
    reports[0].flipped = alice_flips(flip_product);
    let transcript = Transcript {
        bit_count: messages.len(),
        messages,
        flip_product,
    };
    Ok(ProtocolRun {
        reports,
        transcript,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub observable: PauliString,
    pub partition: Partition,
    pub joint: Classification,
    pub assignments: usize,
    /// Assignments where the product of all outcomes was `+1`.
    pub plus: usize,
    pub bit_count: usize,
    pub passed: bool,
    pub witness: Option<Assignment>,
}

/// Runs the protocol on all `2^n` assignments and compares the product of the
/// parties' outcomes with the joint measurement of `p`.
pub fn verify_consistency(
    table: &LhvTable,
    partition: &Partition,
    p: &PauliString,
) -> Result<ConsistencyReport> {
    check_inputs(table, partition, p)?;
    let joint = table.classify_joint(p)?;
    let n = table.n();
    let expected_bits = communication_cost(partition);
    let mut plus = 0;
    let mut witness = None;
    let mut bit_count = expected_bits;
    for a in Assignment::all(n) {
        let run = run_protocol(table, partition, p, &a)?;
        let product = run.product();
        if product == 1 {
            plus += 1;
        }
        if run.transcript.bit_count != expected_bits {
            bit_count = run.transcript.bit_count;
            witness.get_or_insert(a);
        }
        if let Classification::Deterministic(v) = joint {
            if product != v {
                witness.get_or_insert(a);
            }
        }
    }
    let total = 1usize << n;
    let passed = witness.is_none()
        && match joint {
            Classification::Random => 2 * plus == total,
            Classification::Deterministic(_) => true,
        };
    Ok(ConsistencyReport {
        observable: *p,
        partition: partition.clone(),
        joint,
        assignments: total,
        plus,
        bit_count,
        passed,
        witness,
    })
}
