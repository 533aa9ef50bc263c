//! Exhaustive check that the CNOT update rule agrees with every two-qubit
//! Pauli transformation `C P C† = ±P'`.
//!
//! For a transformation `P → sP'`, the value a table assigns to `P` before the
//! gate must equal `s` times the value it assigns to `P'` afterwards. Cells
//! are taken as concrete numbers (X, Z ∈ {±1}; Y ∈ {±i}); a relation between
//! monomials holds for every draw of the random variables iff it holds for
//! every such numeric configuration.

use crate::pauli::{Pauli, PauliString, Phase};

use super::{cnot_rule, Monomial, Row};

/// One numeric two-row configuration (control row, target row).
pub type RowPair = (Row, Row);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    /// Two-qubit product on (control, target) before the gate.
    pub before: PauliString,
    /// Its image under conjugation, sign included.
    pub after: PauliString,
    /// One of the four relations that need `XYZ = i` on both rows.
    pub special: bool,
    pub configurations_checked: usize,
    pub holds_under_precondition: bool,
    pub precondition_witness: Option<RowPair>,
    /// A configuration with some row at `XYZ = -i` breaking the relation.
    pub violation_without_precondition: Option<RowPair>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnotConsistencyReport {
    pub relations: Vec<RelationCheck>,
}

impl CnotConsistencyReport {
    pub fn holding_under_precondition(&self) -> usize {
        self.relations
            .iter()
            .filter(|r| r.holds_under_precondition)
            .count()
    }

    /// Special relations that some `XYZ = -i` configuration breaks.
    pub fn special_falsified(&self) -> usize {
        self.relations
            .iter()
            .filter(|r| r.special && r.violation_without_precondition.is_some())
            .count()
    }

    pub fn passed(&self) -> bool {
        self.relations.len() == 15
            && self.holding_under_precondition() == 15
            && self.relations.iter().filter(|r| r.special).count() == 4
            && self.special_falsified() == 4
    }
}

fn numeric_rows() -> Vec<Row> {
    let mut rows = Vec::with_capacity(8);
    for x in [Phase::ONE, Phase::MINUS_ONE] {
        for y in [Phase::I, Phase::MINUS_I] {
            for z in [Phase::ONE, Phase::MINUS_ONE] {
                rows.push(Row {
                    x: Monomial::constant(x),
                    y: Monomial::constant(y),
                    z: Monomial::constant(z),
                });
            }
        }
    }
    rows
}

fn value(pauli: &PauliString, control: &Row, target: &Row) -> Monomial {
    let mut letters = pauli.letters();
    let (lc, lt) = (letters.next().unwrap_or(Pauli::I), letters.next().unwrap_or(Pauli::I));
    control.entry(lc) * target.entry(lt) * Monomial::constant(pauli.phase())
}

fn relation_holds(before: &PauliString, after: &PauliString, control: &Row, target: &Row) -> bool {
    let (new_control, new_target) = cnot_rule(control, target);
    value(before, control, target) == value(after, &new_control, &new_target)
}

fn is_special(before: &PauliString) -> bool {
    let letters: Vec<Pauli> = before.letters().collect();
    matches!(
        letters.as_slice(),
        [Pauli::X, Pauli::Y] | [Pauli::Y, Pauli::Z] | [Pauli::X, Pauli::Z] | [Pauli::Y, Pauli::Y]
    )
}

/// Checks all 15 nontrivial transformations against the CNOT rule.
pub fn check_cnot_consistency() -> CnotConsistencyReport {
    let rows = numeric_rows();
    let valid: Vec<&Row> = rows
        .iter()
        .filter(|r| r.satisfies_cnot_precondition())
        .collect();
    let relations = (1..16u64)
        .map(|idx| {
            let before = PauliString::from_index(2, idx).expect("two-qubit index");
            let after = before.conjugate_cnot(1, 2).expect("distinct qubits");

            let mut checked = 0;
            let mut precondition_witness = None;
            for control in &valid {
                for target in &valid {
                    checked += 1;
                    if precondition_witness.is_none()
                        && !relation_holds(&before, &after, control, target)
                    {
                        precondition_witness = Some((**control, **target));
                    }
                }
            }

            let violation_without_precondition = rows
                .iter()
                .flat_map(|c| rows.iter().map(move |t| (c, t)))
                .filter(|(c, t)| {
                    c.xyz_product().phase == Phase::MINUS_I
                        || t.xyz_product().phase == Phase::MINUS_I
                })
                .find(|(c, t)| !relation_holds(&before, &after, c, t))
                .map(|(c, t)| (*c, *t));

            RelationCheck {
                special: is_special(&before),
                before,
                after,
                configurations_checked: checked,
                holds_under_precondition: precondition_witness.is_none(),
                precondition_witness,
                violation_without_precondition,
            }
        })
        .collect();
    CnotConsistencyReport { relations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(report: &'a CnotConsistencyReport, before: &str) -> &'a RelationCheck {
        let before: PauliString = before.parse().unwrap();
        report.relations.iter().find(|r| r.before == before).unwrap()
    }

    #[test]
    fn all_relations_hold_under_precondition() {
        let report = check_cnot_consistency();
        assert_eq!(report.relations.len(), 15);
        for r in &report.relations {
            assert!(r.holds_under_precondition, "{} -> {}", r.before, r.after);
            assert_eq!(r.configurations_checked, 16);
        }
        assert!(report.passed());
    }

    #[test]
    fn only_the_four_special_relations_need_the_precondition() {
        let report = check_cnot_consistency();
        for r in &report.relations {
            assert_eq!(
                r.violation_without_precondition.is_some(),
                r.special,
                "{} -> {}",
                r.before,
                r.after
            );
        }
        assert_eq!(report.special_falsified(), 4);
    }

    #[test]
    fn named_relations() {
        let report = check_cnot_consistency();
        let xi = find(&report, "XI");
        assert_eq!(xi.after.to_string(), "+XX");
        assert!(xi.holds_under_precondition);
        let xz = find(&report, "XZ");
        assert_eq!(xz.after.to_string(), "-YY");
        assert!(xz.holds_under_precondition);
        assert!(xz.special);
        let (c, t) = xz.violation_without_precondition.unwrap();
        assert!(c.xyz_product().phase == Phase::MINUS_I || t.xyz_product().phase == Phase::MINUS_I);
        assert!(!relation_holds(&xz.before, &xz.after, &c, &t));
        assert_eq!(find(&report, "XY").after.to_string(), "+YZ");
        assert_eq!(find(&report, "YY").after.to_string(), "-XZ");
        assert_eq!(find(&report, "YZ").after.to_string(), "+XY");
    }
}
