//! Stabilizer generators pushed through H/CNOT circuits by conjugation.

use std::fmt;

use crate::classification::Classification;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        match *self {
            Gate::H(q) => p.conjugate_hadamard(q),
            Gate::Cnot(c, t) => p.conjugate_cnot(c, t),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H({q})"),
            Gate::Cnot(c, t) => write!(f, "CNOT({c},{t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        PauliString::identity(n)?;
        for gate in &gates {
            let in_range = |q: usize| (1..=n).contains(&q);
            let ok = match *gate {
                Gate::H(q) => in_range(q),
                Gate::Cnot(c, t) => in_range(c) && in_range(t) && c != t,
            };
            if !ok {
                return Err(Error::Circuit(format!("{gate} is invalid on {n} qubits")));
            }
        }
        Ok(Circuit { n, gates })
    }

    /// H on qubit 1 followed by CNOT(1, j) for `j = 2..=n`.
    pub fn ghz(n: usize) -> Result<Self> {
        let gates = std::iter::once(Gate::H(1))
            .chain((2..=n).map(|t| Gate::Cnot(1, t)))
            .collect();
        Self::new(n, gates)
    }

    /// Parses whitespace-separated `H(q)` / `CNOT(c,t)` tokens.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let gates = text
            .split_whitespace()
            .map(parse_gate)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, gates)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
}

fn parse_gate(token: &str) -> Result<Gate> {
    let bad = || Error::Circuit(format!("cannot parse gate {token:?}"));
    let (name, rest) = token.split_once('(').ok_or_else(bad)?;
    let args = rest.strip_suffix(')').ok_or_else(bad)?;
    let args: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match (name.to_ascii_uppercase().as_str(), args.as_slice()) {
        ("H", [q]) => Ok(Gate::H(*q)),
        ("CNOT" | "CX", [c, t]) => Ok(Gate::Cnot(*c, *t)),
        _ => Err(bad()),
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, gate) in self.gates.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{gate}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    n: usize,
    generators: Vec<PauliString>,
}

/// Symplectic vector: x bits low, z bits high.
fn symplectic(p: &PauliString) -> u128 {
    p.x_mask() as u128 | ((p.z_mask() as u128) << 64)
}

impl StabilizerTableau {
    /// `⟨Z_1, Z_2, …, Z_n⟩` for `|0…0⟩`.
    pub fn initial(n: usize) -> Result<Self> {
        PauliString::identity(n)?;
        let generators = (1..=n)
            .map(|q| {
                let letters: Vec<Pauli> = (1..=n)
                    .map(|k| if k == q { Pauli::Z } else { Pauli::I })
                    .collect();
                PauliString::from_letters(Phase::ONE, &letters)
            })
            .collect::<Result<_>>()?;
        Ok(StabilizerTableau { n, generators })
    }

    pub fn from_generators(generators: Vec<PauliString>) -> Result<Self> {
        let n = generators.len();
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: g.len() });
            }
            if !g.is_observable() {
                return Err(Error::NotObservable(g.to_string()));
            }
        }
        Ok(StabilizerTableau { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn apply(&self, gate: &Gate) -> Result<StabilizerTableau> {
        let generators = self
            .generators
            .iter()
            .map(|g| gate.conjugate(g))
            .collect::<Result<_>>()?;
        Ok(StabilizerTableau { n: self.n, generators })
    }

    pub fn pairwise_commuting(&self) -> bool {
        self.generators.iter().enumerate().all(|(k, a)| {
            self.generators[k + 1..]
                .iter()
                .all(|b| a.commutes(b).unwrap_or(false))
        })
    }

    /// Row-reduced basis of the symplectic vectors; each entry carries the set
    /// of generators (as a bit mask) whose product it is.
    fn echelon(&self) -> Vec<(u128, u64)> {
        let mut basis: Vec<(u128, u64)> = Vec::with_capacity(self.n);
        for (k, g) in self.generators.iter().enumerate() {
            let (v, combo) = reduce(&basis, symplectic(g), 1 << k);
            if v != 0 {
                basis.push((v, combo));
                basis.sort_by_key(|entry| entry.0.leading_zeros());
            }
        }
        basis
    }

    /// Rank of the generators over GF(2).
    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    pub fn classify(&self, p: &PauliString) -> Result<Classification> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: p.len() });
        }
        if !p.is_observable() {
            return Err(Error::NotObservable(p.to_string()));
        }
        let basis = self.echelon();
        if basis.len() != self.n {
            return Err(Error::RankDeficient { rank: basis.len(), n: self.n });
        }
        for g in &self.generators {
            if !p.commutes(g)? {
                return Ok(Classification::Random);
            }
        }
        let (residual, combo) = reduce(&basis, symplectic(p), 0);
        if residual != 0 {
            return Err(Error::InvariantViolation(format!(
                "{p} commutes with every generator but is not in the group"
            )));
        }
        let mut product = PauliString::identity(self.n)?;
        for (k, g) in self.generators.iter().enumerate() {
            if (combo >> k) & 1 == 1 {
                product = product.multiply(g)?;
            }
        }
        debug_assert_eq!(symplectic(&product), symplectic(p));
        let relative = product.phase() * p.phase().inverse();
        match relative.sign() {
            Some(sign) => Ok(Classification::Deterministic(sign)),
            None => Err(Error::InvariantViolation(format!(
                "generator product {product} differs from {p} by an imaginary phase"
            ))),
        }
    }
}

/// Eliminates `v` against a basis kept sorted by descending pivot (highest set bit).
fn reduce(basis: &[(u128, u64)], mut v: u128, mut combo: u64) -> (u128, u64) {
    for &(b, bc) in basis {
        let pivot = 127 - b.leading_zeros();
        if (v >> pivot) & 1 == 1 {
            v ^= b;
            combo ^= bc;
        }
    }
    (v, combo)
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if g.phase() == Phase::ONE {
                for letter in g.letters() {
                    write!(f, "{letter}")?;
                }
            } else {
                write!(f, "{g}")?;
            }
        }
        f.write_str("⟩")
    }
}

/// Final tableau after conjugating `⟨Z_1, …, Z_n⟩` through every gate.
pub fn tableau_evolve(circuit: &Circuit) -> Result<StabilizerTableau> {
    circuit
        .gates()
        .iter()
        .try_fold(StabilizerTableau::initial(circuit.n())?, |tab, gate| tab.apply(gate))
}

pub fn tableau_classify(tableau: &StabilizerTableau, p: &PauliString) -> Result<Classification> {
    tableau.classify(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ghz_classify;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn gens(t: &StabilizerTableau) -> Vec<String> {
        t.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn ghz3_generator_evolution() {
        let circuit = Circuit::ghz(3).unwrap();
        assert_eq!(circuit.to_string(), "H(1) CNOT(1,2) CNOT(1,3)");
        let mut tab = StabilizerTableau::initial(3).unwrap();
        assert_eq!(tab.to_string(), "⟨ZII, IZI, IIZ⟩");
        let expected = ["⟨XII, IZI, IIZ⟩", "⟨XXI, ZZI, IIZ⟩", "⟨XXX, ZZI, ZIZ⟩"];
        for (gate, want) in circuit.gates().iter().zip(expected) {
            tab = tab.apply(gate).unwrap();
            assert_eq!(tab.to_string(), want);
            assert!(tab.pairwise_commuting());
            assert_eq!(tab.rank(), 3);
        }
        assert_eq!(tableau_evolve(&circuit).unwrap(), tab);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let tab = tableau_evolve(&Circuit::new(3, vec![]).unwrap()).unwrap();
        assert_eq!(gens(&tab), ["+ZII", "+IZI", "+IIZ"]);
    }

    #[test]
    fn classification_examples() {
        let tab = tableau_evolve(&Circuit::ghz(3).unwrap()).unwrap();
        assert_eq!(tab.classify(&p("YYX")).unwrap(), Classification::Deterministic(-1));
        assert_eq!(tab.classify(&p("-YYX")).unwrap(), Classification::Deterministic(1));
        assert_eq!(tab.classify(&p("ZZI")).unwrap(), Classification::Deterministic(1));
        assert_eq!(tab.classify(&p("XII")).unwrap(), Classification::Random);
        assert!(tab.classify(&p("XX")).is_err());
        assert!(tab.classify(&p("+iXXX")).is_err());
    }

    #[test]
    fn rank_deficiency_is_rejected() {
        let tab = StabilizerTableau::from_generators(vec![p("ZZ"), p("ZZ")]).unwrap();
        assert_eq!(tab.rank(), 1);
        assert!(matches!(
            tab.classify(&p("ZZ")),
            Err(Error::RankDeficient { rank: 1, n: 2 })
        ));
    }

    #[test]
    fn agrees_with_analytic_classifier() {
        for n in 1..=5 {
            let tab = tableau_evolve(&Circuit::ghz(n).unwrap()).unwrap();
            for idx in 0..4u64.pow(n as u32) {
                let obs = PauliString::from_index(n, idx).unwrap();
                assert_eq!(tab.classify(&obs).unwrap(), ghz_classify(&obs).unwrap(), "{obs}");
            }
        }
    }

    #[test]
    fn heisenberg_picture_consistency() {
        // Classifying P after the circuit equals classifying the back-conjugated
        // P on |0…0⟩, where only I/Z products are certain.
        let circuit = Circuit::parse("H(1) CNOT(1,2) H(3) CNOT(3,1) CNOT(2,3) H(2)", 3).unwrap();
        let tab = tableau_evolve(&circuit).unwrap();
        let initial = StabilizerTableau::initial(3).unwrap();
        for idx in 0..64 {
            for sign in [Phase::ONE, Phase::MINUS_ONE] {
                let obs = PauliString::from_index(3, idx).unwrap().with_phase(sign);
                let back = circuit
                    .gates()
                    .iter()
                    .rev()
                    .try_fold(obs, |acc, g| g.conjugate(&acc))
                    .unwrap();
                let expected = if back.x_mask() == 0 {
                    Classification::Deterministic(back.phase().sign().unwrap())
                } else {
                    Classification::Random
                };
                assert_eq!(initial.classify(&back).unwrap(), expected);
                assert_eq!(tab.classify(&obs).unwrap(), expected, "{obs}");
            }
        }
    }

    #[test]
    fn circuit_parsing() {
        let c = Circuit::parse("H(1)  CNOT(1,2)\nCNOT(1, 3)", 3);
        // "CNOT(1," and "3)" split on whitespace.
        assert!(c.is_err());
        let c = Circuit::parse("H(1) CNOT(1,2) CNOT(1,3)", 3).unwrap();
        assert_eq!(c, Circuit::ghz(3).unwrap());
        assert!(Circuit::parse("H(4)", 3).is_err());
        assert!(Circuit::parse("CNOT(2,2)", 3).is_err());
        assert!(Circuit::parse("S(1)", 3).is_err());
        assert!(Circuit::parse("H1", 3).is_err());
        assert_eq!(Circuit::parse("", 2).unwrap().gates().len(), 0);
    }
}
