//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("gate addresses qubit {qubit} more than once")]
    DuplicateQubit { qubit: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("{what} is capped at {cap} sites, got {requested}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        requested: usize,
    },

    #[error("invalid Pauli label {label:?}: {reason}")]
    InvalidPauliLabel { label: String, reason: String },

    #[error(
        "term {label:?} mixes measurement bases and cannot be estimated from uniform settings"
    )]
    MixedBasisTerm { label: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("trial-state circuits exist only for 2 and 4 sites, got {sites}")]
    UnsupportedSites { sites: usize },

    #[error("singular evaluation point: {0}")]
    Singular(String),

    #[error("Bethe state has vanishing norm (roots likely collide or are invalid)")]
    VanishingNorm,

    #[error("Bethe roots collide: min pairwise rapidity distance {min_distance:e}")]
    CollidingRoots { min_distance: f64 },

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("solver did not converge after {iterations} iterations (final residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("internal numerical check failed: {what} (residual {residual:e})")]
    NumericalCheck { what: &'static str, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
