use num_complex::Complex64;

use super::Axis;
use crate::error::{Error, Result};

/// `2^n` complex amplitudes over `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    #[inline]
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            Err(Error::QubitOutOfRange {
                index: qubit,
                n_qubits: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Applies `exp(-i * angle * P)` to `qubit`.
    pub fn apply_rotation(&mut self, qubit: usize, axis: Axis, angle: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let (s, c) = angle.sin_cos();
        let i = Complex64::i();
        // [[m00, m01], [m10, m11]]
        let (m00, m01, m10, m11) = match axis {
            Axis::X => (
                Complex64::new(c, 0.0),
                -i * s,
                -i * s,
                Complex64::new(c, 0.0),
            ),
            Axis::Y => (
                Complex64::new(c, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(c, 0.0),
            ),
            Axis::Z => (
                Complex64::new(c, -s),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(c, s),
            ),
        };
        let mask = self.mask(qubit);
        for k in 0..self.amplitudes.len() {
            if k & mask == 0 {
                let a0 = self.amplitudes[k];
                let a1 = self.amplitudes[k | mask];
                self.amplitudes[k] = m00 * a0 + m01 * a1;
                self.amplitudes[k | mask] = m10 * a0 + m11 * a1;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::InvalidCnot { control, target });
        }
        let cm = self.mask(control);
        let tm = self.mask(target);
        for k in 0..self.amplitudes.len() {
            if k & cm != 0 && k & tm == 0 {
                self.amplitudes.swap(k, k | tm);
            }
        }
        Ok(())
    }

    /// `<psi| Z_qubit |psi>`.
    pub fn expectation_z(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let mask = self.mask(qubit);
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(k, a)| if k & mask == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum::<f64>()
            .clamp(-1.0, 1.0))
    }

    /// `<Z_i>` for every qubit.
    pub fn expectations_z(&self) -> Vec<f64> {
        (0..self.n_qubits)
            .map(|q| self.expectation_z(q).expect("qubit in range"))
            .collect()
    }
}
