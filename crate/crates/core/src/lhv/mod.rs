//! The local hidden-variable table.
//!
//! Each qubit owns one row holding the values its X, Y and Z measurements
//! would return. A value is a [`Monomial`]: a power of `i` times a product of
//! shared fair coins `R_j`. Joint measurements multiply the selected cells;
//! the read-out drops a leftover factor of `i` by dividing it out.

mod consistency;

pub use consistency::{check_cnot_consistency, CnotConsistencyReport, RelationCheck};

use std::fmt;
use std::ops::Mul;

use rand::Rng;

use crate::classification::Classification;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Phase};

/// Largest table: random-variable indices `1..=63` share one machine word.
pub const MAX_VARS: usize = 63;

/// Set of random-variable indices; bit `j` stands for `R_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn single(j: usize) -> Self {
        debug_assert!((1..=MAX_VARS).contains(&j));
        VarSet(1 << j)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(VarSet::EMPTY, |acc, j| acc * VarSet::single(j))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, j: usize) -> bool {
        j <= MAX_VARS && (self.0 >> j) & 1 == 1
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=MAX_VARS).filter(move |&j| self.contains(j))
    }
}

/// `R_j² = 1`, so products combine by symmetric difference.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for VarSet {
    type Output = VarSet;

    fn mul(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 ^ rhs.0)
    }
}

/// `phase × ∏_{j ∈ vars} R_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub phase: Phase,
    pub vars: VarSet,
}

/// A table cell.
pub type LhvEntry = Monomial;
/// A product of table cells prior to read-out.
pub type SymbolicValue = Monomial;

impl Monomial {
    pub const ONE: Monomial = Monomial {
        phase: Phase::ONE,
        vars: VarSet::EMPTY,
    };

    pub fn new(phase: Phase, vars: VarSet) -> Self {
        Monomial { phase, vars }
    }

    pub fn constant(phase: Phase) -> Self {
        Monomial::new(phase, VarSet::EMPTY)
    }

    pub fn var(j: usize) -> Self {
        Monomial::new(Phase::ONE, VarSet::single(j))
    }

    pub fn is_constant(self) -> bool {
        self.vars.is_empty()
    }

    pub fn negate(self) -> Self {
        Monomial::new(-self.phase, self.vars)
    }

    pub fn times_phase(self, phase: Phase) -> Self {
        Monomial::new(self.phase * phase, self.vars)
    }

    /// Exact complex value under `assignment`.
    pub fn eval(self, assignment: &Assignment) -> Phase {
        let minus = (self.vars.bits() & assignment.minus).count_ones();
        self.phase * Phase::from_exponent(2 * minus)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.phase * rhs.phase, self.vars * rhs.vars)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match (self.phase.exponent(), self.vars.is_empty()) {
            (0, true) => "1",
            (0, false) => "",
            (1, _) => "i",
            (2, true) => "-1",
            (2, false) => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for j in self.vars.iter() {
            write!(f, "R{j}")?;
        }
        Ok(())
    }
}

/// Read-out of a product: real values pass through, `±i` is divided by `i`.
pub fn discard_i(value: Phase) -> i8 {
    if value.is_imaginary() {
        (value * Phase::MINUS_I).sign().unwrap_or(1)
    } else {
        value.sign().unwrap_or(1)
    }
}

/// Concrete draw of `R_1..R_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Assignment {
    n: usize,
    minus: u64,
}

impl Assignment {
    /// Assignment number `index` of `0..2^n`: bit `j - 1` set means `R_j = -1`.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::Capacity { n, max: MAX_VARS });
        }
        if n < 64 && index >> n != 0 {
            return Err(Error::Assignment {
                got: 64 - index.leading_zeros() as usize,
                need: n,
            });
        }
        Ok(Assignment {
            n,
            minus: index << 1,
        })
    }

    /// Values for `R_1..R_n`, each `+1` or `-1`.
    pub fn from_values(values: &[i8]) -> Result<Self> {
        let mut index = 0u64;
        for (k, &v) in values.iter().enumerate() {
            match v {
                1 => {}
                -1 => index |= 1 << k,
                other => {
                    return Err(Error::InvariantViolation(format!(
                        "R_{} = {other} is not ±1",
                        k + 1
                    )))
                }
            }
        }
        Self::from_index(values.len(), index)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let bits = n.min(MAX_VARS);
        Self::from_index(n, rng.random::<u64>() & ((1 << bits) - 1))
    }

    /// All `2^n` assignments in index order.
    pub fn all(n: usize) -> impl Iterator<Item = Assignment> {
        (0..1u64 << n.min(MAX_VARS)).map(move |idx| Assignment {
            n,
            minus: idx << 1,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn index(&self) -> u64 {
        self.minus >> 1
    }

    /// Value of `R_j`.
    pub fn value(&self, j: usize) -> i8 {
        if j <= MAX_VARS && (self.minus >> j) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn values(&self) -> Vec<i8> {
        (1..=self.n).map(|j| self.value(j)).collect()
    }
}

/// One qubit's X, Y and Z cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Row {
    pub x: LhvEntry,
    pub y: LhvEntry,
    pub z: LhvEntry,
}

impl Row {
    pub fn entry(&self, letter: Pauli) -> LhvEntry {
        match letter {
            Pauli::I => Monomial::ONE,
            Pauli::X => self.x,
            Pauli::Y => self.y,
            Pauli::Z => self.z,
        }
    }

    pub fn xyz_product(&self) -> Monomial {
        self.x * self.y * self.z
    }

    /// X and Z real, Y imaginary, and `XYZ = +i` with no leftover variables.
    pub fn satisfies_cnot_precondition(&self) -> bool {
        self.x.phase.is_real()
            && self.z.phase.is_real()
            && self.y.phase.is_imaginary()
            && self.xyz_product() == Monomial::constant(Phase::I)
    }

    pub fn hadamard(&self) -> Row {
        Row {
            x: self.z,
            y: self.y.negate(),
            z: self.x,
        }
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.x, self.y, self.z)
    }
}

/// Update rule for CNOT on a (control, target) pair of rows, applied without
/// any precondition check.
pub fn cnot_rule(control: &Row, target: &Row) -> (Row, Row) {
    let new_control = Row {
        x: control.x * target.x,
        y: control.y * target.x,
        z: control.z,
    };
    let new_target = Row {
        x: target.x,
        y: control.z * target.y,
        z: control.z * target.z,
    };
    (new_control, new_target)
}

/// The hidden-variable state of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LhvTable {
    rows: Vec<Row>,
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        Err(Error::Capacity { n, max: MAX_VARS })
    } else {
        Ok(())
    }
}

impl LhvTable {
    /// Table for `|0…0⟩`: row 1 is `(R_1, -iR_1, 1)`, every other row `j` is
    /// `(R_j, iR_j, 1)`.
    pub fn initial(n: usize) -> Result<Self> {
        check_size(n)?;
        let rows = (1..=n)
            .map(|j| Row {
                x: Monomial::var(j),
                y: Monomial::new(if j == 1 { Phase::MINUS_I } else { Phase::I }, VarSet::single(j)),
                z: Monomial::ONE,
            })
            .collect();
        Ok(LhvTable { rows })
    }

    /// `|0…0⟩` table with `iR_j` in every Y cell, row 1 included.
    pub fn initial_uniform(n: usize) -> Result<Self> {
        check_size(n)?;
        let rows = (1..=n)
            .map(|j| Row {
                x: Monomial::var(j),
                y: Monomial::new(Phase::I, VarSet::single(j)),
                z: Monomial::ONE,
            })
            .collect();
        Ok(LhvTable { rows })
    }

    /// Direct construction of the GHZ table: row 1 is `(R_2⋯R_n, iR_1⋯R_n, R_1)`
    /// and row `j ≥ 2` is `(R_j, iR_1R_j, R_1)`.
    pub fn ghz(n: usize) -> Result<Self> {
        check_size(n)?;
        let rest = VarSet::from_indices(2..=n);
        let mut rows = vec![Row {
            x: Monomial::new(Phase::ONE, rest),
            y: Monomial::new(Phase::I, VarSet::single(1) * rest),
            z: Monomial::var(1),
        }];
        rows.extend((2..=n).map(|j| Row {
            x: Monomial::var(j),
            y: Monomial::new(Phase::I, VarSet::from_indices([1, j])),
            z: Monomial::var(1),
        }));
        Ok(LhvTable { rows })
    }

    /// GHZ table obtained by running the preparation circuit through the
    /// update rules: H on qubit 1, then CNOT(1, j) for `j = 2..=n`.
    pub fn ghz_by_circuit(n: usize) -> Result<Self> {
        (2..=n).try_fold(Self::initial(n)?.apply_hadamard(1)?, |table, j| {
            table.apply_cnot(1, j)
        })
    }

    pub fn from_rows(rows: Vec<Row>) -> Result<Self> {
        check_size(rows.len())?;
        Ok(LhvTable { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    fn check_qubit(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n() {
            Err(Error::QubitOutOfRange {
                qubit: q,
                n: self.n(),
            })
        } else {
            Ok(q - 1)
        }
    }

    pub fn row(&self, q: usize) -> Result<&Row> {
        Ok(&self.rows[self.check_qubit(q)?])
    }

    /// `X·Y·Z` of row `q`. Rows produced by the update rules always give a
    /// constant `±i`; a non-empty variable set flags a malformed row.
    pub fn xyz_product(&self, q: usize) -> Result<Monomial> {
        Ok(self.row(q)?.xyz_product())
    }

    pub fn apply_hadamard(&self, q: usize) -> Result<LhvTable> {
        let j = self.check_qubit(q)?;
        let mut out = self.clone();
        out.rows[j] = self.rows[j].hadamard();
        Ok(out)
    }

    /// Rejects rows that are not correlated as `XYZ = +i` (with X/Z real and
    /// Y imaginary); the update rule is only sound under that condition.
    pub fn apply_cnot(&self, c: usize, t: usize) -> Result<LhvTable> {
        let jc = self.check_qubit(c)?;
        let jt = self.check_qubit(t)?;
        if jc == jt {
            return Err(Error::SameQubit(c));
        }
        for (q, j) in [(c, jc), (t, jt)] {
            let row = &self.rows[j];
            if !row.satisfies_cnot_precondition() {
                let product = row.xyz_product();
                return Err(Error::cnot_precondition(q, product.phase, !product.is_constant()));
            }
        }
        let (control, target) = cnot_rule(&self.rows[jc], &self.rows[jt]);
        let mut out = self.clone();
        out.rows[jc] = control;
        out.rows[jt] = target;
        Ok(out)
    }

    fn check_observable(&self, p: &PauliString) -> Result<()> {
        if p.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: p.len(),
            });
        }
        if !p.is_observable() {
            return Err(Error::NotObservable(p.to_string()));
        }
        Ok(())
    }

    /// Product of the cells selected by `p`'s letters on `qubits` only
    /// (no sign from `p`). Qubit indices are assumed valid.
    pub(crate) fn product_on(&self, p: &PauliString, qubits: &[usize]) -> Monomial {
        qubits.iter().fold(Monomial::ONE, |acc, &q| {
            let letter = p.letter(q).unwrap_or(Pauli::I);
            acc * self.rows[q - 1].entry(letter)
        })
    }

    /// Joint measurement of `p`: product of the selected cells times `p`'s sign.
    pub fn symbolic_joint(&self, p: &PauliString) -> Result<SymbolicValue> {
        self.check_observable(p)?;
        let product = p
            .letters()
            .zip(&self.rows)
            .fold(Monomial::ONE, |acc, (letter, row)| acc * row.entry(letter));
        Ok(product.times_phase(p.phase()))
    }

    pub fn classify_joint(&self, p: &PauliString) -> Result<Classification> {
        let value = self.symbolic_joint(p)?;
        if !value.is_constant() {
            return Ok(Classification::Random);
        }
        match value.phase.sign() {
            Some(sign) => Ok(Classification::Deterministic(sign)),
            None => Err(Error::InvariantViolation(format!(
                "joint value of {p} is the constant {}",
                value
            ))),
        }
    }

    /// Outcome of measuring `p` under a concrete draw of the random variables.
    pub fn sample_outcome(&self, p: &PauliString, assignment: &Assignment) -> Result<i8> {
        if assignment.len() < self.n() {
            return Err(Error::Assignment {
                got: assignment.len(),
                need: self.n(),
            });
        }
        let value = self.symbolic_joint(p)?;
        Ok(discard_i(value.eval(assignment)))
    }

    /// X and Z cells real and Y cells imaginary in every row.
    pub fn columns_well_typed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.x.phase.is_real() && r.z.phase.is_real() && r.y.phase.is_imaginary())
    }
}

impl fmt::Display for LhvTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn render(t: &LhvTable) -> Vec<String> {
        t.rows().iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn initial_table_snapshot() {
        let t = LhvTable::initial(3).unwrap();
        assert_eq!(render(&t), ["R1 | -iR1 | 1", "R2 | iR2 | 1", "R3 | iR3 | 1"]);
        assert_eq!(render(&LhvTable::initial(1).unwrap()), ["R1 | -iR1 | 1"]);
        assert_eq!(t.xyz_product(1).unwrap(), Monomial::constant(Phase::MINUS_I));
        assert_eq!(t.xyz_product(2).unwrap(), Monomial::constant(Phase::I));
        assert_eq!(t.xyz_product(3).unwrap(), Monomial::constant(Phase::I));
        assert!(LhvTable::initial(0).is_err());
        assert!(LhvTable::initial(64).is_err());
        assert!(LhvTable::initial(63).is_ok());
    }

    #[test]
    fn hadamard_update() {
        let t = LhvTable::initial(3).unwrap();
        let h = t.apply_hadamard(1).unwrap();
        assert_eq!(render(&h), ["1 | iR1 | R1", "R2 | iR2 | 1", "R3 | iR3 | 1"]);
        assert_eq!(h.apply_hadamard(1).unwrap(), t);
        assert_eq!(h.xyz_product(1).unwrap().phase, Phase::I);
        let h2 = t.apply_hadamard(2).unwrap();
        assert_eq!(h2.xyz_product(2).unwrap().phase, Phase::MINUS_I);
        assert!(t.apply_hadamard(4).is_err());
    }

    #[test]
    fn cnot_updates_snapshot() {
        let t = LhvTable::initial(3).unwrap().apply_hadamard(1).unwrap();
        let bell = t.apply_cnot(1, 2).unwrap();
        assert_eq!(render(&bell), ["R2 | iR1R2 | R1", "R2 | iR1R2 | R1", "R3 | iR3 | 1"]);
        let ghz = bell.apply_cnot(1, 3).unwrap();
        assert_eq!(
            render(&ghz),
            ["R2R3 | iR1R2R3 | R1", "R2 | iR1R2 | R1", "R3 | iR1R3 | R1"]
        );
        assert_eq!(ghz, LhvTable::ghz(3).unwrap());
    }

    #[test]
    fn cnot_rejects_rows_without_plus_i_correlation() {
        let t = LhvTable::initial(3).unwrap();
        match t.apply_cnot(1, 2) {
            Err(Error::CnotPrecondition { row, product }) => {
                assert_eq!(row, 1);
                assert_eq!(product, "-i");
            }
            other => panic!("unexpected {other:?}"),
        }
        // Target row fails once the control is fine.
        let t = LhvTable::initial(2).unwrap().apply_hadamard(1).unwrap().apply_hadamard(2).unwrap();
        assert!(matches!(t.apply_cnot(1, 2), Err(Error::CnotPrecondition { row: 2, .. })));
        assert_eq!(
            LhvTable::ghz(3).unwrap().apply_cnot(2, 2),
            Err(Error::SameQubit(2))
        );
        // The uniform variant passes the check before any Hadamard.
        assert!(LhvTable::initial_uniform(2).unwrap().apply_cnot(1, 2).is_ok());
    }

    #[test]
    fn gates_touch_only_their_rows() {
        let t = LhvTable::ghz(5).unwrap();
        let h = t.apply_hadamard(3).unwrap();
        let changed: Vec<_> = (0..5).filter(|&k| h.rows()[k] != t.rows()[k]).collect();
        assert_eq!(changed, [2]);
        let c = LhvTable::ghz(5).unwrap().apply_cnot(2, 4).unwrap();
        let changed: Vec<_> = (0..5).filter(|&k| c.rows()[k] != t.rows()[k]).collect();
        assert_eq!(changed, [1, 3]);
        assert_eq!(c.xyz_product(2).unwrap(), Monomial::constant(Phase::I));
        assert_eq!(c.xyz_product(4).unwrap(), Monomial::constant(Phase::I));
    }

    #[test]
    fn ghz_tables() {
        assert_eq!(
            render(&LhvTable::ghz(2).unwrap()),
            ["R2 | iR1R2 | R1", "R2 | iR1R2 | R1"]
        );
        assert_eq!(render(&LhvTable::ghz(1).unwrap()), ["1 | iR1 | R1"]);
        for n in 1..=10 {
            let direct = LhvTable::ghz(n).unwrap();
            assert_eq!(direct, LhvTable::ghz_by_circuit(n).unwrap(), "n={n}");
            assert!(direct.columns_well_typed());
            for q in 1..=n {
                assert_eq!(direct.xyz_product(q).unwrap(), Monomial::constant(Phase::I));
            }
        }
        assert_eq!(LhvTable::ghz(63).unwrap(), LhvTable::ghz_by_circuit(63).unwrap());
    }

    #[test]
    fn joint_values() {
        let bell = LhvTable::ghz(2).unwrap();
        assert_eq!(bell.symbolic_joint(&p("YY")).unwrap(), Monomial::constant(Phase::MINUS_ONE));
        let ghz = LhvTable::ghz(3).unwrap();
        assert_eq!(ghz.symbolic_joint(&p("XXX")).unwrap(), Monomial::ONE);
        assert_eq!(ghz.symbolic_joint(&p("ZII")).unwrap(), Monomial::var(1));
        assert_eq!(ghz.symbolic_joint(&p("-ZII")).unwrap(), Monomial::var(1).negate());
        assert!(matches!(ghz.symbolic_joint(&p("XX")), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(ghz.symbolic_joint(&p("+iXXX")), Err(Error::NotObservable(_))));
    }

    #[test]
    fn joint_classification() {
        let ghz = LhvTable::ghz(3).unwrap();
        assert_eq!(ghz.classify_joint(&p("XXX")).unwrap(), Classification::Deterministic(1));
        for s in ["XYY", "YXY", "YYX"] {
            assert_eq!(ghz.classify_joint(&p(s)).unwrap(), Classification::Deterministic(-1));
        }
        assert_eq!(ghz.classify_joint(&p("-XYY")).unwrap(), Classification::Deterministic(1));
        for n in 1..=6 {
            let id = PauliString::identity(n).unwrap();
            assert_eq!(
                LhvTable::ghz(n).unwrap().classify_joint(&id).unwrap(),
                Classification::Deterministic(1)
            );
        }
        let ghz4 = LhvTable::ghz(4).unwrap();
        assert_eq!(ghz4.classify_joint(&p("XZZX")).unwrap(), Classification::Random);
    }

    #[test]
    fn classify_flags_imaginary_constants() {
        // A malformed table whose single Y cell is the bare constant i.
        let row = Row {
            x: Monomial::ONE,
            y: Monomial::constant(Phase::I),
            z: Monomial::ONE,
        };
        let t = LhvTable::from_rows(vec![row]).unwrap();
        assert!(matches!(t.classify_joint(&p("Y")), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn sampling() {
        let ghz = LhvTable::ghz(3).unwrap();
        for a in Assignment::all(3) {
            assert_eq!(ghz.sample_outcome(&p("XXX"), &a).unwrap(), 1);
        }
        let r1_minus = Assignment::from_values(&[-1, 1, 1]).unwrap();
        assert_eq!(ghz.sample_outcome(&p("ZII"), &r1_minus).unwrap(), -1);
        let r1_plus = Assignment::from_values(&[1, -1, 1]).unwrap();
        assert_eq!(ghz.symbolic_joint(&p("YYY")).unwrap(), Monomial::new(Phase::MINUS_I, VarSet::single(1)));
        assert_eq!(ghz.sample_outcome(&p("YYY"), &r1_plus).unwrap(), -1);
        assert_eq!(ghz.sample_outcome(&p("YYY"), &r1_minus).unwrap(), 1);
        let short = Assignment::from_values(&[1, 1]).unwrap();
        assert!(matches!(ghz.sample_outcome(&p("XXX"), &short), Err(Error::Assignment { .. })));
    }

    #[test]
    fn discard_i_divides_by_i() {
        assert_eq!(discard_i(Phase::ONE), 1);
        assert_eq!(discard_i(Phase::MINUS_ONE), -1);
        assert_eq!(discard_i(Phase::I), 1);
        assert_eq!(discard_i(Phase::MINUS_I), -1);
    }

    #[test]
    fn random_outcomes_split_evenly_and_deterministic_ones_are_constant() {
        for n in 1..=5 {
            let table = LhvTable::ghz(n).unwrap();
            for idx in 0..4u64.pow(n as u32) {
                let obs = PauliString::from_index(n, idx).unwrap();
                let plus = Assignment::all(n)
                    .filter(|a| table.sample_outcome(&obs, a).unwrap() == 1)
                    .count();
                match table.classify_joint(&obs).unwrap() {
                    Classification::Random => assert_eq!(2 * plus, 1 << n, "{obs}"),
                    Classification::Deterministic(1) => assert_eq!(plus, 1 << n),
                    Classification::Deterministic(_) => assert_eq!(plus, 0),
                }
            }
        }
    }

    #[test]
    fn assignments() {
        let a = Assignment::from_values(&[1, -1, -1]).unwrap();
        assert_eq!(a.values(), [1, -1, -1]);
        assert_eq!(a.index(), 0b110);
        assert_eq!(Assignment::all(4).count(), 16);
        assert!(Assignment::from_values(&[1, 2]).is_err());
        assert!(Assignment::from_index(2, 4).is_err());
    }

    proptest::proptest! {
        #[test]
        fn gate_sequences_keep_columns_typed(
            n in 2usize..7,
            gates in proptest::collection::vec((proptest::bool::ANY, 1usize..7, 1usize..7), 0..40),
        ) {
            let mut table = LhvTable::initial(n).unwrap();
            for (is_h, a, b) in gates {
                let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
                if is_h {
                    let before = table.xyz_product(a).unwrap();
                    table = table.apply_hadamard(a).unwrap();
                    proptest::prop_assert_eq!(table.xyz_product(a).unwrap(), before.negate());
                } else if a != b {
                    match table.apply_cnot(a, b) {
                        Ok(next) => {
                            proptest::prop_assert_eq!(next.xyz_product(a).unwrap(), Monomial::constant(Phase::I));
                            proptest::prop_assert_eq!(next.xyz_product(b).unwrap(), Monomial::constant(Phase::I));
                            table = next;
                        }
                        Err(Error::CnotPrecondition { .. }) => {}
                        Err(e) => proptest::prop_assert!(false, "{e}"),
                    }
                }
                proptest::prop_assert!(table.columns_well_typed());
                for q in 1..=n {
                    proptest::prop_assert!(table.xyz_product(q).unwrap().is_constant());
                }
            }
        }
    }

    #[test]
    fn monomial_rendering() {
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(Monomial::constant(Phase::MINUS_ONE).to_string(), "-1");
        assert_eq!(Monomial::constant(Phase::MINUS_I).to_string(), "-i");
        let m = Monomial::new(Phase::MINUS_I, VarSet::from_indices([3, 1]));
        assert_eq!(m.to_string(), "-iR1R3");
        assert_eq!(Monomial::var(2).negate().to_string(), "-R2");
    }
}
