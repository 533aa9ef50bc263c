//! Pauli-group algebra on up to 64 qubits.
//!
//! A [`PauliString`] stores its letters as two packed bit masks (`x`, `z`) and
//! an explicit phase, so `Y` is the letter itself rather than `iXZ`. Qubit `q`
//! (1-based) lives in bit `q - 1`.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest system a [`PauliString`] can describe.
pub const MAX_QUBITS: usize = 64;

/// A power of `i`: `+1`, `+i`, `-1` or `-i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub const fn from_exponent(exponent: u32) -> Self {
        Phase((exponent % 4) as u8)
    }

    pub const fn exponent(self) -> u8 {
        self.0
    }

    pub const fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    pub const fn is_imaginary(self) -> bool {
        self.0 & 1 == 1
    }

    /// `Some(±1)` for real phases.
    pub const fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Maps `+1`/`-1` onto the corresponding phase; any other value is rejected.
    pub const fn from_sign(sign: i8) -> Option<Self> {
        match sign {
            1 => Some(Phase::ONE),
            -1 => Some(Phase::MINUS_ONE),
            _ => None,
        }
    }

    pub const fn inverse(self) -> Self {
        Phase((4 - self.0) % 4)
    }

    /// Complex value of the phase as `(re, im)`.
    pub const fn to_parts(self) -> (i8, i8) {
        match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }
}

impl MulAssign for Phase {
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        self * Phase::MINUS_ONE
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    const fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    const fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub const fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Signed product of single-qubit Pauli operators, an element of the n-qubit Pauli group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    /// The identity on `n` qubits with phase `+1`.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Capacity { n, max: MAX_QUBITS });
        }
        Ok(PauliString {
            n,
            x: 0,
            z: 0,
            phase: Phase::ONE,
        })
    }

    pub fn from_letters(phase: Phase, letters: &[Pauli]) -> Result<Self> {
        let mut p = Self::identity(letters.len())?;
        for (j, letter) in letters.iter().enumerate() {
            let (x, z) = letter.bits();
            p.x |= (x as u64) << j;
            p.z |= (z as u64) << j;
        }
        p.phase = phase;
        Ok(p)
    }

    /// Unsigned product number `index` in base-4 enumeration order
    /// (digit `q - 1` selects the letter of qubit `q`: 0=I, 1=X, 2=Y, 3=Z).
    ///
    /// Enumerating `0..4^n` visits every unsigned Pauli product exactly once.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        let mut p = Self::identity(n)?;
        if n < 32 && index >> (2 * n) != 0 {
            return Err(Error::InvariantViolation(format!(
                "index {index} out of range for {n} qubits"
            )));
        }
        for j in 0..n.min(32) {
            let letter = Pauli::ALL[((index >> (2 * j)) & 3) as usize];
            let (x, z) = letter.bits();
            p.x |= (x as u64) << j;
            p.z |= (z as u64) << j;
        }
        Ok(p)
    }

    /// Builds a string from packed masks (bit `q - 1` is qubit `q`).
    pub fn from_masks(n: usize, x: u64, z: u64, phase: Phase) -> Result<Self> {
        let mut p = Self::identity(n)?;
        if (x | z) & !mask(n) != 0 {
            return Err(Error::InvariantViolation(format!(
                "mask bits set beyond qubit {n}"
            )));
        }
        p.x = x;
        p.z = z;
        p.phase = phase;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Hermitian elements of the group: phase `+1` or `-1`.
    pub fn is_observable(&self) -> bool {
        self.phase.is_real()
    }

    pub fn is_identity_letters(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    fn check_qubit(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n {
            Err(Error::QubitOutOfRange { qubit: q, n: self.n })
        } else {
            Ok(q - 1)
        }
    }

    pub fn letter(&self, q: usize) -> Result<Pauli> {
        let j = self.check_qubit(q)?;
        Ok(self.letter_at(j))
    }

    fn letter_at(&self, j: usize) -> Pauli {
        Pauli::from_bits((self.x >> j) & 1 == 1, (self.z >> j) & 1 == 1)
    }

    /// Letters in qubit order, qubit 1 first.
    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n).map(move |j| self.letter_at(j))
    }

    pub fn count(&self, letter: Pauli) -> usize {
        let m = mask(self.n);
        let bits = match letter {
            Pauli::I => !self.x & !self.z & m,
            Pauli::X => self.x & !self.z,
            Pauli::Y => self.x & self.z,
            Pauli::Z => !self.x & self.z,
        };
        bits.count_ones() as usize
    }

    pub fn y_count(&self) -> usize {
        self.count(Pauli::Y)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Group product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let (px, py, pz) = (x1 & !z1, x1 & z1, !x1 & z1);
        let (qx, qy, qz) = (x2 & !z2, x2 & z2, !x2 & z2);
        // XY = iZ, YZ = iX, ZX = iY; the reversed orders carry -i.
        let cyclic = (px & qy) | (py & qz) | (pz & qx);
        let anticyclic = (py & qx) | (pz & qy) | (px & qz);
        let exponent = 4 + cyclic.count_ones() % 4 - anticyclic.count_ones() % 4;
        Ok(PauliString {
            n: self.n,
            x: x1 ^ x2,
            z: z1 ^ z2,
            phase: self.phase * other.phase * Phase::from_exponent(exponent),
        })
    }

    /// True iff `self · other = other · self`.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        let anti = (self.x & other.z) ^ (self.z & other.x);
        Ok(anti.count_ones().is_multiple_of(2))
    }

    /// `H P H†` with `H` on qubit `q`: X ↔ Z, Y → -Y.
    pub fn conjugate_hadamard(&self, q: usize) -> Result<PauliString> {
        let j = self.check_qubit(q)?;
        let mut out = *self;
        let (x, z) = ((self.x >> j) & 1, (self.z >> j) & 1);
        if x & z == 1 {
            out.phase = -out.phase;
        }
        out.x = (self.x & !(1 << j)) | (z << j);
        out.z = (self.z & !(1 << j)) | (x << j);
        Ok(out)
    }

    /// `C P C†` with CNOT from control `c` to target `t`.
    pub fn conjugate_cnot(&self, c: usize, t: usize) -> Result<PauliString> {
        let jc = self.check_qubit(c)?;
        let jt = self.check_qubit(t)?;
        if jc == jt {
            return Err(Error::SameQubit(c));
        }
        let (xc, zc) = ((self.x >> jc) & 1, (self.z >> jc) & 1);
        let (xt, zt) = ((self.x >> jt) & 1, (self.z >> jt) & 1);
        let mut out = *self;
        // Sign flips exactly for XZ -> -YY and YY -> -XZ.
        if xc & zt & (xt ^ zc ^ 1) == 1 {
            out.phase = -out.phase;
        }
        out.x ^= xc << jt;
        out.z ^= zt << jc;
        Ok(out)
    }
}

impl Neg for PauliString {
    type Output = PauliString;

    fn neg(mut self) -> PauliString {
        self.phase = -self.phase;
        self
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for letter in self.letters() {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts an optional sign prefix (`+`, `-`, `+i`, `-i`) followed by at least
    /// one of `I`, `X`, `Y`, `Z`. Error positions are 1-based character offsets.
    fn from_str(text: &str) -> Result<Self> {
        let (phase, body, offset) = if let Some(rest) = text.strip_prefix("+i") {
            (Phase::I, rest, 2)
        } else if let Some(rest) = text.strip_prefix("-i") {
            (Phase::MINUS_I, rest, 2)
        } else if let Some(rest) = text.strip_prefix('+') {
            (Phase::ONE, rest, 1)
        } else if let Some(rest) = text.strip_prefix('-') {
            (Phase::MINUS_ONE, rest, 1)
        } else {
            (Phase::ONE, text, 0)
        };
        if body.is_empty() {
            return Err(Error::ParsePauli {
                position: offset + 1,
                reason: "expected at least one of I, X, Y, Z".into(),
            });
        }
        let mut letters = Vec::with_capacity(body.len());
        for (k, c) in body.chars().enumerate() {
            match Pauli::from_char(c) {
                Some(letter) => letters.push(letter),
                None => {
                    return Err(Error::ParsePauli {
                        position: offset + k + 1,
                        reason: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        PauliString::from_letters(phase, &letters)
    }
}
