//! Laboratory for the periodic spin-1/2 XXZ chain in the ferromagnetic regime.
//!
//! The crate has three layers that cross-validate each other:
//!
//! * a dense statevector simulator with parameterized gates, Pauli-sum
//!   observables and shot-based sampling ([`statevector`], [`gate`],
//!   [`pauli`], [`sampling`]);
//! * the XXZ Hamiltonian, its symmetry operators and a sector-resolved
//!   exact-diagonalization oracle ([`xxz`], [`spectrum`]);
//! * an algebraic Bethe-ansatz engine — R-matrix, monodromy and transfer
//!   matrices, Bethe equations with a real-root solver — that constructs
//!   the same eigenstates independently of the simulator ([`bethe`]).
//!
//! On top of these sit hardcoded one-magnon trial-state circuits for 2 and
//! 4 sites ([`ansatz`]), a line-based circuit text format
//! ([`circuit_text`]) and a derivative-free one-parameter VQE driver
//! ([`vqe`]).
//!
//! All numerics are generic over the real scalar type via [`Scalar`];
//! `*64` aliases at the crate root fix `f64`, which every shipped tool
//! uses.
//!
//! # Conventions
//!
//! Qubits are labeled right to left starting from 0: basis index
//! `b = sum_j bit_j * 2^j` where `bit_j` is the state of qubit `j`, and
//! `|0>` per qubit is spin up. Chain sites `k = 1..=N` map to qubits
//! `j = N - k`; with that identification the Bethe-ansatz operators built
//! in [`bethe`] come out directly in this basis (see
//! [`bethe::monodromy`]).

pub mod ansatz;
pub mod bethe;
pub mod circuit_text;
pub mod error;
pub mod gate;
pub mod pauli;
pub mod sampling;
pub mod scalar;
pub mod spectrum;
pub mod statevector;
pub mod vqe;
pub mod xxz;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` aliases for the central types.
pub type Statevector64 = statevector::Statevector<f64>;
pub type Gate64 = gate::Gate<f64>;
pub type Circuit64 = gate::Circuit<f64>;
pub type PauliSum64 = pauli::PauliSum<f64>;
pub type XxzParams64 = xxz::XxzParams<f64>;
pub type Spectrum64 = spectrum::Spectrum<f64>;
pub type BetheRoots64 = bethe::BetheRoots<f64>;
pub type VqeResult64 = vqe::VqeResult<f64>;
