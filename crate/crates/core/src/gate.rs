//! Parameterized gates and circuits acting on statevectors.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cr, Scalar};
use crate::statevector::Statevector;

/// Gate kinds. `U3(theta, phi, lambda)` is the generic single-qubit
/// rotation
///
/// ```text
/// [ cos(theta/2)              -e^{i lambda} sin(theta/2)        ]
/// [ e^{i phi} sin(theta/2)     e^{i(phi+lambda)} cos(theta/2)   ]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T: Scalar> {
    U3 {
        theta: T,
        phi: T,
        lambda: T,
        qubit: usize,
    },
    X {
        qubit: usize,
    },
    Z {
        qubit: usize,
    },
    Hadamard {
        qubit: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
}

impl<T: Scalar> Gate<T> {
    /// Qubits the gate acts on.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::U3 { qubit, .. }
            | Gate::X { qubit }
            | Gate::Z { qubit }
            | Gate::Hadamard { qubit } => vec![qubit],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Swap { a, b } => vec![a, b],
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::DuplicateQubit { qubit: qs[0] });
        }
        Ok(())
    }

    /// 2x2 matrix of a single-qubit gate, `None` for two-qubit gates.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex<T>; 2]; 2]> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        match *self {
            Gate::U3 {
                theta, phi, lambda, ..
            } => {
                let half = theta / (T::one() + T::one());
                let (c, s) = (cr(half.cos()), cr(half.sin()));
                let eip = Complex::from_polar(T::one(), phi);
                let eil = Complex::from_polar(T::one(), lambda);
                Some([[c, -eil * s], [eip * s, eip * eil * c]])
            }
            Gate::X { .. } => Some([[zero, one], [one, zero]]),
            Gate::Z { .. } => Some([[one, zero], [zero, -one]]),
            Gate::Hadamard { .. } => {
                let h = cr(T::one() / (T::one() + T::one()).sqrt());
                Some([[h, h], [h, -h]])
            }
            Gate::Cnot { .. } | Gate::Swap { .. } => None,
        }
    }

    pub(crate) fn apply_in_place(&self, amps: &mut [Complex<T>]) {
        match *self {
            Gate::Cnot { control, target } => {
                let (cm, tm) = (1usize << control, 1usize << target);
                for i in 0..amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        amps.swap(i, i | tm);
                    }
                }
            }
            Gate::Swap { a, b } => {
                let (am, bm) = (1usize << a, 1usize << b);
                for i in 0..amps.len() {
                    if i & am != 0 && i & bm == 0 {
                        amps.swap(i, (i & !am) | bm);
                    }
                }
            }
            _ => {
                let m = self
                    .single_qubit_matrix()
                    .expect("single-qubit kinds covered above");
                let q = self.qubits()[0];
                let mask = 1usize << q;
                for i in 0..amps.len() {
                    if i & mask == 0 {
                        let j = i | mask;
                        let (a0, a1) = (amps[i], amps[j]);
                        amps[i] = m[0][0] * a0 + m[0][1] * a1;
                        amps[j] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
        }
    }
}

/// Apply a single gate, returning the new state.
pub fn apply_gate<T: Scalar>(state: &Statevector<T>, gate: &Gate<T>) -> Result<Statevector<T>> {
    gate.validate(state.num_qubits())?;
    let mut out = state.clone();
    gate.apply_in_place(out.amplitudes_mut());
    Ok(out)
}

/// Ordered gate list; the first gate in the list is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T: Scalar> {
    num_qubits: usize,
    gates: Vec<Gate<T>>,
}

impl<T: Scalar> Circuit<T> {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn u3(&mut self, theta: T, phi: T, lambda: T, qubit: usize) -> Result<&mut Self> {
        self.push(Gate::U3 {
            theta,
            phi,
            lambda,
            qubit,
        })
    }

    pub fn x(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(Gate::X { qubit })
    }

    pub fn z(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(Gate::Z { qubit })
    }

    pub fn h(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(Gate::Hadamard { qubit })
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cnot { control, target })
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.push(Gate::Swap { a, b })
    }

    /// Append all gates of `other`, relabeling its qubit `i` to
    /// `mapping[i]`.
    pub fn append_mapped(&mut self, other: &Circuit<T>, mapping: &[usize]) -> Result<&mut Self> {
        if mapping.len() != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: other.num_qubits,
                actual: mapping.len(),
            });
        }
        for g in &other.gates {
            let m = |q: usize| mapping[q];
            let mapped = match *g {
                Gate::U3 {
                    theta,
                    phi,
                    lambda,
                    qubit,
                } => Gate::U3 {
                    theta,
                    phi,
                    lambda,
                    qubit: m(qubit),
                },
                Gate::X { qubit } => Gate::X { qubit: m(qubit) },
                Gate::Z { qubit } => Gate::Z { qubit: m(qubit) },
                Gate::Hadamard { qubit } => Gate::Hadamard { qubit: m(qubit) },
                Gate::Cnot { control, target } => Gate::Cnot {
                    control: m(control),
                    target: m(target),
                },
                Gate::Swap { a, b } => Gate::Swap { a: m(a), b: m(b) },
            };
            self.push(mapped)?;
        }
        Ok(self)
    }
}

/// Run a circuit on an initial state (gates applied left to right).
pub fn run_circuit<T: Scalar>(
    circuit: &Circuit<T>,
    initial: &Statevector<T>,
) -> Result<Statevector<T>> {
    if circuit.num_qubits() != initial.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1 << circuit.num_qubits(),
            actual: initial.dim(),
        });
    }
    let mut out = initial.clone();
    for g in circuit.gates() {
        g.validate(out.num_qubits())?;
        g.apply_in_place(out.amplitudes_mut());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Dense matrix of a gate on `n` qubits, column by column.
    fn dense(gate: &Gate<f64>, n: usize) -> Vec<Vec<Complex64>> {
        let dim = 1 << n;
        let mut cols = Vec::new();
        for c in 0..dim {
            let e = Statevector::computational_basis(n, c).unwrap();
            cols.push(apply_gate(&e, gate).unwrap().amplitudes().to_vec());
        }
        cols
    }

    fn unitarity_residual(cols: &[Vec<Complex64>]) -> f64 {
        let dim = cols.len();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let mut s = Complex64::new(0.0, 0.0);
                for (a, b) in cols[i].iter().zip(&cols[j]) {
                    s += a.conj() * b;
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }

    #[test]
    fn x_flips_qubit_zero() {
        let s = Statevector::all_zero(2).unwrap();
        let out = apply_gate(&s, &Gate::X { qubit: 0 }).unwrap();
        assert_eq!(out.amplitude(1), Complex64::new(1.0, 0.0));
        assert_eq!(out.amplitude(0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cnot_matrix_rows() {
        // Control 1, target 0: |10> stays is not right -- (0,1,0,0) is
        // |01> (control clear) and maps to itself; (0,0,1,0) is |10> and
        // maps to |11>.
        let g = Gate::<f64>::Cnot {
            control: 1,
            target: 0,
        };
        let s01 = Statevector::computational_basis(2, 1).unwrap();
        assert_eq!(apply_gate(&s01, &g).unwrap().amplitude(1).re, 1.0);
        let s10 = Statevector::computational_basis(2, 2).unwrap();
        assert_eq!(apply_gate(&s10, &g).unwrap().amplitude(3).re, 1.0);
    }

    #[test]
    fn u3_direct_substitution() {
        // U3(pi/2, 0, 0)|0> = (cos pi/4, sin pi/4).
        let s = Statevector::all_zero(1).unwrap();
        let g = Gate::U3 {
            theta: PI / 2.0,
            phi: 0.0,
            lambda: 0.0,
            qubit: 0,
        };
        let out = apply_gate(&s, &g).unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        assert!((out.amplitude(0) - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(1) - Complex64::new(r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn all_gate_kinds_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = Gate::U3 {
                theta: rng.gen_range(-6.3..6.3),
                phi: rng.gen_range(-6.3..6.3),
                lambda: rng.gen_range(-6.3..6.3),
                qubit: 0,
            };
            assert!(unitarity_residual(&dense(&g, 1)) < 1e-13);
        }
        for g in [
            Gate::X { qubit: 0 },
            Gate::Z { qubit: 0 },
            Gate::Hadamard { qubit: 0 },
        ] {
            assert!(unitarity_residual(&dense(&g, 1)) < 1e-14);
        }
        for g in [
            Gate::Cnot {
                control: 1,
                target: 0,
            },
            Gate::Swap { a: 0, b: 1 },
        ] {
            assert!(unitarity_residual(&dense(&g, 2)) < 1e-14);
        }
    }

    #[test]
    fn random_circuits_preserve_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 4;
        for _ in 0..5 {
            let mut c = Circuit::new(n);
            for _ in 0..50 {
                match rng.gen_range(0..4) {
                    0 => {
                        c.u3(
                            rng.gen_range(-6.3..6.3),
                            rng.gen_range(-6.3..6.3),
                            rng.gen_range(-6.3..6.3),
                            rng.gen_range(0..n),
                        )
                        .unwrap();
                    }
                    1 => {
                        c.h(rng.gen_range(0..n)).unwrap();
                    }
                    2 => {
                        let a = rng.gen_range(0..n);
                        let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
                        c.cx(a, b).unwrap();
                    }
                    _ => {
                        let a = rng.gen_range(0..n);
                        let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
                        c.swap(a, b).unwrap();
                    }
                }
            }
            // Random normalized initial state.
            let amps: Vec<Complex64> = (0..1 << n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let init =
                Statevector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap();
            let out = run_circuit(&c, &init).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::<f64>::new(3);
        let s = Statevector::computational_basis(3, 5).unwrap();
        assert_eq!(run_circuit(&c, &s).unwrap(), s);
    }

    #[test]
    fn swap_conjugation_moves_single_qubit_ops() {
        // O_j = P_ij O_i P_ij on random states.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let theta = rng.gen_range(-3.0..3.0);
            let phi = rng.gen_range(-3.0..3.0);
            let lambda = rng.gen_range(-3.0..3.0);
            let amps: Vec<Complex64> = (0..8)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let s =
                Statevector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap();

            let mut via_swap = Circuit::new(3);
            via_swap.swap(0, 2).unwrap();
            via_swap.u3(theta, phi, lambda, 0).unwrap();
            via_swap.swap(0, 2).unwrap();
            let mut direct = Circuit::new(3);
            direct.u3(theta, phi, lambda, 2).unwrap();

            let a = run_circuit(&via_swap, &s).unwrap();
            let b = run_circuit(&direct, &s).unwrap();
            for i in 0..8 {
                assert!((a.amplitude(i) - b.amplitude(i)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn validation_errors() {
        let mut c = Circuit::<f64>::new(2);
        assert!(c.x(2).is_err());
        assert!(c.cx(1, 1).is_err());
        let s = Statevector::<f64>::all_zero(3).unwrap();
        assert!(run_circuit(&Circuit::new(2), &s).is_err());
    }
}
