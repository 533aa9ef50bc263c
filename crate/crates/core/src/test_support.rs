//! Brute-force dense-matrix oracle for unit tests on one or two qubits.

pub mod matrix {
    use num_complex::Complex64;

    use crate::pauli::{Pauli, PauliString, Phase};

    const TOL: f64 = 1e-12;

    #[derive(Debug, Clone)]
    pub struct Matrix {
        dim: usize,
        data: Vec<Complex64>,
    }

    impl PartialEq for Matrix {
        fn eq(&self, other: &Self) -> bool {
            self.dim == other.dim
                && self
                    .data
                    .iter()
                    .zip(&other.data)
                    .all(|(a, b)| (a - b).norm() < TOL)
        }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    impl Matrix {
        fn zeros(dim: usize) -> Self {
            Matrix {
                dim,
                data: vec![c(0.0, 0.0); dim * dim],
            }
        }

        fn scalar_one() -> Self {
            Matrix {
                dim: 1,
                data: vec![c(1.0, 0.0)],
            }
        }

        fn from_rows(rows: [[Complex64; 2]; 2]) -> Self {
            Matrix {
                dim: 2,
                data: rows.iter().flatten().copied().collect(),
            }
        }

        fn single(letter: Pauli) -> Self {
            let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
            match letter {
                Pauli::I => Self::from_rows([[o, z], [z, o]]),
                Pauli::X => Self::from_rows([[z, o], [o, z]]),
                Pauli::Y => Self::from_rows([[z, c(0.0, -1.0)], [c(0.0, 1.0), z]]),
                Pauli::Z => Self::from_rows([[o, z], [z, -o]]),
            }
        }

        pub fn get(&self, r: usize, col: usize) -> Complex64 {
            self.data[r * self.dim + col]
        }

        pub fn kron(&self, other: &Matrix) -> Matrix {
            let dim = self.dim * other.dim;
            let mut out = Matrix::zeros(dim);
            for r1 in 0..self.dim {
                for c1 in 0..self.dim {
                    for r2 in 0..other.dim {
                        for c2 in 0..other.dim {
                            out.data[(r1 * other.dim + r2) * dim + c1 * other.dim + c2] =
                                self.get(r1, c1) * other.get(r2, c2);
                        }
                    }
                }
            }
            out
        }

        pub fn matmul(&self, other: &Matrix) -> Matrix {
            let dim = self.dim;
            let mut out = Matrix::zeros(dim);
            for r in 0..dim {
                for col in 0..dim {
                    out.data[r * dim + col] = (0..dim).map(|k| self.get(r, k) * other.get(k, col)).sum();
                }
            }
            out
        }

        pub fn dagger(&self) -> Matrix {
            let dim = self.dim;
            let mut out = Matrix::zeros(dim);
            for r in 0..dim {
                for col in 0..dim {
                    out.data[col * dim + r] = self.get(r, col).conj();
                }
            }
            out
        }

        fn scale(mut self, s: Complex64) -> Matrix {
            self.data.iter_mut().for_each(|v| *v *= s);
            self
        }

        /// Kronecker product of the letters, qubit 1 leftmost, times the phase.
        pub fn pauli(p: &PauliString) -> Matrix {
            let mut out = Matrix::scalar_one();
            for letter in p.letters() {
                out = out.kron(&Matrix::single(letter));
            }
            let (re, im) = p.phase().to_parts();
            out.scale(c(re as f64, im as f64))
        }

        /// Finds the signed Pauli string on `n` qubits equal to `m`, if any.
        pub fn identify(m: &Matrix, n: usize) -> Option<PauliString> {
            (0..4u64.pow(n as u32))
                .flat_map(|idx| {
                    (0..4).map(move |e| {
                        PauliString::from_index(n, idx)
                            .unwrap()
                            .with_phase(Phase::from_exponent(e))
                    })
                })
                .find(|cand| Matrix::pauli(cand) == *m)
        }
    }

    fn basis_bit(b: usize, n: usize, q: usize) -> usize {
        (b >> (n - q)) & 1
    }

    pub fn hadamard_matrix(n: usize, q: usize) -> Matrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = Matrix::from_rows([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]);
        let id = Matrix::single(Pauli::I);
        let mut out = Matrix::scalar_one();
        for k in 1..=n {
            out = out.kron(if k == q { &h } else { &id });
        }
        out
    }

    pub fn cnot_matrix(n: usize, control: usize, target: usize) -> Matrix {
        let dim = 1 << n;
        let mut out = Matrix::zeros(dim);
        for b in 0..dim {
            let image = if basis_bit(b, n, control) == 1 {
                b ^ (1 << (n - target))
            } else {
                b
            };
            out.data[image * dim + b] = c(1.0, 0.0);
        }
        out
    }
}
