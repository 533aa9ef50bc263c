//! Dense state-vector simulator for a handful of qubits.
//!
//! Basis index bit `q - 1` holds qubit `q`.

use num_complex::Complex64;

use crate::classification::Classification;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

pub const MAX_STATEVECTOR_QUBITS: usize = 12;

const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_STATEVECTOR_QUBITS {
            return Err(Error::Capacity {
                n,
                max: MAX_STATEVECTOR_QUBITS,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amplitudes })
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz(n: usize) -> Result<Self> {
        let mut state = Self::zero(n)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        state.amplitudes[0] = Complex64::new(s, 0.0);
        let last = state.amplitudes.len() - 1;
        state.amplitudes[last] += Complex64::new(s, 0.0);
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    fn bit(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n {
            Err(Error::QubitOutOfRange { qubit: q, n: self.n })
        } else {
            Ok(1 << (q - 1))
        }
    }

    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        let bit = self.bit(q)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
                self.amplitudes[b] = (a0 + a1) * s;
                self.amplitudes[b | bit] = (a0 - a1) * s;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, c: usize, t: usize) -> Result<()> {
        let (cb, tb) = (self.bit(c)?, self.bit(t)?);
        if c == t {
            return Err(Error::SameQubit(c));
        }
        for b in 0..self.amplitudes.len() {
            if b & cb != 0 && b & tb == 0 {
                self.amplitudes.swap(b, b | tb);
            }
        }
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<Complex64> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        // P|b⟩ = coeff · (-1)^{|b ∧ sign_mask|} |b ⊕ flip_mask⟩, letter by letter:
        // X|v⟩ = |1-v⟩, Z|v⟩ = (-1)^v|v⟩, Y|v⟩ = i(-1)^v|1-v⟩.
        let mut flip = 0usize;
        let mut sign_mask = 0usize;
        let mut coeff = {
            let (re, im) = p.phase().to_parts();
            Complex64::new(re as f64, im as f64)
        };
        for (k, letter) in p.letters().enumerate() {
            match letter {
                Pauli::I => {}
                Pauli::X => flip |= 1 << k,
                Pauli::Z => sign_mask |= 1 << k,
                Pauli::Y => {
                    flip |= 1 << k;
                    sign_mask |= 1 << k;
                    coeff *= Complex64::new(0.0, 1.0);
                }
            }
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (b, amp) in self.amplitudes.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let sign = if (b & sign_mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            total += self.amplitudes[b ^ flip].conj() * amp * sign;
        }
        Ok(total * coeff)
    }

    pub fn classify(&self, p: &PauliString) -> Result<Classification> {
        if !p.is_observable() {
            return Err(Error::NotObservable(p.to_string()));
        }
        let e = self.expectation(p)?;
        if e.im.abs() < TOLERANCE {
            if (e.re - 1.0).abs() < TOLERANCE {
                return Ok(Classification::Deterministic(1));
            }
            if (e.re + 1.0).abs() < TOLERANCE {
                return Ok(Classification::Deterministic(-1));
            }
            if e.re.abs() < TOLERANCE {
                return Ok(Classification::Random);
            }
        }
        Err(Error::UnexpectedExpectation {
            observable: p.to_string(),
            value: e.re,
        })
    }
}

/// Classifies `p` from `⟨ψ_n|P|ψ_n⟩` on a freshly built GHZ vector.
pub fn statevector_classify(p: &PauliString, n: usize) -> Result<Classification> {
    StateVector::ghz(n)?.classify(p)
}
