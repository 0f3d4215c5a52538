//! Dense statevector over qubits, qubit 0 least significant.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Hard cap on the number of qubits for dense amplitude arrays. The design
/// envelope is ~20 qubits; beyond that the 2^N storage is not sensible here.
pub const MAX_QUBITS: usize = 20;

/// State of `num_qubits` qubits as 2^N complex amplitudes, indexed by basis
/// bitstring with qubit 0 as the least-significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T: Scalar> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> Statevector<T> {
    fn check_qubits(num_qubits: usize) -> Result<()> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::CapExceeded {
                what: "statevector",
                cap: MAX_QUBITS,
                requested: num_qubits,
            });
        }
        Ok(())
    }

    /// Computational basis state `|index>`.
    pub fn computational_basis(num_qubits: usize, index: usize) -> Result<Self> {
        Self::check_qubits(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::QubitOutOfRange { index, num_qubits });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits, amps })
    }

    /// `|0...0>`.
    pub fn all_zero(num_qubits: usize) -> Result<Self> {
        Self::computational_basis(num_qubits, 0)
    }

    /// Build from raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(2),
                actual: dim,
            });
        }
        let num_qubits = dim.trailing_zeros() as usize;
        Self::check_qubits(num_qubits)?;
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    /// `|norm - 1| < tol`.
    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() < tol
    }

    /// Rescale to unit norm; errors when the norm is numerically zero.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < lit(1e-14) {
            return Err(Error::VanishingNorm);
        }
        let inv = Complex::new(T::one() / n, T::zero());
        Ok(Self {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|a| a * inv).collect(),
        })
    }

    /// `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Debug serialization: JSON array of `[re, im]` pairs, basis index
    /// ascending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.amps
                .iter()
                .map(|a| {
                    serde_json::json!([
                        a.re.to_f64().unwrap_or(f64::NAN),
                        a.im.to_f64().unwrap_or(f64::NAN)
                    ])
                })
                .collect(),
        )
    }
}

/// `min_phi || a - e^{i phi} b ||`.
///
/// The minimizing phase is `arg <a|b>`; the residual is then accumulated
/// componentwise rather than through `sqrt(|a|^2 + |b|^2 - 2|<a|b>|)`,
/// whose cancellation floors the result near 1e-8 for unit vectors.
pub fn distance_up_to_phase<T: Scalar>(a: &Statevector<T>, b: &Statevector<T>) -> Result<T> {
    let ip = a.inner(b)?;
    let mag = ip.norm();
    if mag < lit(1e-300) {
        // Orthogonal (or one side zero): every phase gives the same distance.
        let s = a.norm();
        let t = b.norm();
        return Ok((s * s + t * t).sqrt());
    }
    let phase = ip.conj() / Complex::new(mag, T::zero());
    let d2 = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .fold(T::zero(), |acc, v| acc + v);
    Ok(d2.sqrt())
}

/// True iff `a` and `b` agree up to a global phase within `tol`.
pub fn states_equal_up_to_phase<T: Scalar>(
    a: &Statevector<T>,
    b: &Statevector<T>,
    tol: T,
) -> Result<bool> {
    Ok(distance_up_to_phase(a, b)? < tol)
}
