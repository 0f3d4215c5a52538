//! Real-weighted sums of Pauli strings.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::statevector::Statevector;

/// Single-site Pauli operator.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliOp::I),
            'X' => Some(PauliOp::X),
            'Y' => Some(PauliOp::Y),
            'Z' => Some(PauliOp::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }
}

/// One weighted Pauli string. `ops[j]` acts on qubit `j`; the textual
/// label reads the other way round (leftmost character = highest qubit),
/// matching bitstring notation.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm<T: Scalar> {
    pub coefficient: T,
    ops: Vec<PauliOp>,
}

impl<T: Scalar> PauliTerm<T> {
    /// Operator on qubit `j`.
    pub fn op(&self, qubit: usize) -> PauliOp {
        self.ops[qubit]
    }

    pub fn ops(&self) -> &[PauliOp] {
        &self.ops
    }

    pub fn label(&self) -> String {
        self.ops.iter().rev().map(|o| o.to_char()).collect()
    }

    /// Bit masks (flips, minus-sign bits, number of Y's): the string maps
    /// `|i>` to `i^{y} (-1)^{popcount(i & sign_mask)} |i ^ flip_mask>`.
    fn masks(&self) -> (usize, usize, u32) {
        let mut flip = 0usize;
        let mut sign = 0usize;
        let mut ys = 0u32;
        for (j, op) in self.ops.iter().enumerate() {
            match op {
                PauliOp::I => {}
                PauliOp::X => flip |= 1 << j,
                PauliOp::Y => {
                    flip |= 1 << j;
                    sign |= 1 << j;
                    ys += 1;
                }
                PauliOp::Z => sign |= 1 << j,
            }
        }
        (flip, sign, ys)
    }
}

/// Hermitian operator as a list of real-weighted Pauli strings on
/// `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum<T: Scalar> {
    num_qubits: usize,
    terms: Vec<PauliTerm<T>>,
}

impl<T: Scalar> PauliSum<T> {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            terms: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    /// Add a term from its textual label (leftmost char = highest qubit).
    pub fn add_term(&mut self, coefficient: T, label: &str) -> Result<&mut Self> {
        if label.len() != self.num_qubits {
            return Err(Error::InvalidPauliLabel {
                label: label.to_string(),
                reason: format!("expected length {}", self.num_qubits),
            });
        }
        let mut ops = Vec::with_capacity(label.len());
        for c in label.chars().rev() {
            ops.push(
                PauliOp::from_char(c).ok_or_else(|| Error::InvalidPauliLabel {
                    label: label.to_string(),
                    reason: format!("invalid character {c:?}"),
                })?,
            );
        }
        self.terms.push(PauliTerm { coefficient, ops });
        Ok(self)
    }

    /// Add a term given per-qubit operators (`ops[j]` on qubit `j`).
    pub fn add_ops(&mut self, coefficient: T, ops: Vec<PauliOp>) -> Result<&mut Self> {
        if ops.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                actual: ops.len(),
            });
        }
        self.terms.push(PauliTerm { coefficient, ops });
        Ok(self)
    }

    /// Negated copy (used for maximizing runs).
    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coefficient = -t.coefficient;
        }
        out
    }

    /// `O |psi>`.
    pub fn apply(&self, state: &Statevector<T>) -> Result<Statevector<T>> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.num_qubits,
                actual: state.dim(),
            });
        }
        let dim = state.dim();
        let mut out = vec![Complex::new(T::zero(), T::zero()); dim];
        let i_unit = Complex::new(T::zero(), T::one());
        for term in &self.terms {
            let (flip, sign, ys) = term.masks();
            let y_phase = i_unit.powu(ys);
            let coeff = Complex::new(term.coefficient, T::zero()) * y_phase;
            for (src, amp) in state.amplitudes().iter().enumerate() {
                let parity = ((src & sign).count_ones() & 1) == 1;
                let val = if parity { -coeff } else { coeff };
                out[src ^ flip] += val * amp;
            }
        }
        Statevector::from_amplitudes(out)
    }

    /// `<psi|O|psi>` for a normalized `psi`; the (tiny) imaginary residue
    /// of the Hermitian sum is checked and dropped.
    pub fn expectation(&self, state: &Statevector<T>) -> Result<T> {
        let dev = (state.norm() - T::one()).abs();
        if dev > lit(1e-8) {
            return Err(Error::NotNormalized {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let applied = self.apply(state)?;
        let ip = state.inner(&applied)?;
        let tol = T::epsilon() * lit(1e4);
        if ip.im.abs() > tol {
            return Err(Error::NumericalCheck {
                what: "expectation imaginary residue",
                residual: ip.im.abs().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(ip.re)
    }

    /// Dense matrix form, for small systems and cross-checks.
    pub fn to_dense(&self) -> DMatrix<Complex<T>> {
        let dim = 1usize << self.num_qubits;
        let mut m = DMatrix::from_element(dim, dim, Complex::new(T::zero(), T::zero()));
        let i_unit = Complex::new(T::zero(), T::one());
        for term in &self.terms {
            let (flip, sign, ys) = term.masks();
            let coeff = Complex::new(term.coefficient, T::zero()) * i_unit.powu(ys);
            for col in 0..dim {
                let parity = ((col & sign).count_ones() & 1) == 1;
                let val = if parity { -coeff } else { coeff };
                m[(col ^ flip, col)] += val;
            }
        }
        m
    }
}
