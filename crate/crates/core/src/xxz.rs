//! Periodic ferromagnetic XXZ chain: Hamiltonian and symmetry operators.
//!
//! ```text
//! H = -1/4 sum_k [ X_k X_{k+1} + Y_k Y_{k+1}
//!                  + cosh(eta) (Z_k Z_{k+1} - 1) ],   site N+1 == site 1.
//! ```
//!
//! The per-bond identity contribution is kept inside the Pauli sum as one
//! identity-string term so the exact and shot-sampled backends share a
//! single operator representation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pauli::{PauliOp, PauliSum};
use crate::scalar::{lit, Scalar};
use crate::statevector::Statevector;

/// Cap for dense diagonalization ([`crate::spectrum::exact_spectrum`]).
pub const DENSE_DIAG_CAP: usize = 12;

/// Chain length and anisotropy (`eta > 0`, ferromagnetic regime).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzParams<T: Scalar> {
    pub num_sites: usize,
    pub eta: T,
}

impl<T: Scalar> XxzParams<T> {
    pub fn new(num_sites: usize, eta: T) -> Result<Self> {
        if num_sites < 2 {
            return Err(Error::InvalidParameter(format!(
                "the chain needs at least 2 sites, got {num_sites}"
            )));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail too
        if !(eta > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "anisotropy eta must be positive, got {eta}"
            )));
        }
        Ok(Self { num_sites, eta })
    }
}

fn bond_ops(n: usize, j: usize, k: usize, op: PauliOp) -> Vec<PauliOp> {
    let mut ops = vec![PauliOp::I; n];
    ops[j] = op;
    ops[k] = op;
    ops
}

/// XXZ Hamiltonian as a Pauli sum over qubits (site `k` on qubit `N-k`;
/// the bond set is the same under either orientation).
pub fn build_hamiltonian<T: Scalar>(params: &XxzParams<T>) -> PauliSum<T> {
    let n = params.num_sites;
    let quarter = lit::<T>(0.25);
    let ch = params.eta.cosh();
    let mut sum = PauliSum::new(n);
    for j in 0..n {
        let k = (j + 1) % n;
        sum.add_ops(-quarter, bond_ops(n, j, k, PauliOp::X))
            .expect("bond term");
        sum.add_ops(-quarter, bond_ops(n, j, k, PauliOp::Y))
            .expect("bond term");
        sum.add_ops(-quarter * ch, bond_ops(n, j, k, PauliOp::Z))
            .expect("bond term");
    }
    // -1/4 sum_k cosh(eta) (-1) = + N/4 cosh(eta) on the identity string.
    sum.add_ops(quarter * ch * lit(n as f64), vec![PauliOp::I; n])
        .expect("identity term");
    sum
}

/// Total spin-z operator `S^z = 1/2 sum_k Z_k`.
pub fn build_sz<T: Scalar>(num_sites: usize) -> PauliSum<T> {
    let mut sum = PauliSum::new(num_sites);
    let half = lit::<T>(0.5);
    for j in 0..num_sites {
        let mut ops = vec![PauliOp::I; num_sites];
        ops[j] = PauliOp::Z;
        sum.add_ops(half, ops).expect("sz term");
    }
    sum
}

/// Charge conjugation `C = prod_k X_k` as a Pauli sum (for dense checks).
pub fn charge_conjugation_operator<T: Scalar>(num_sites: usize) -> PauliSum<T> {
    let mut sum = PauliSum::new(num_sites);
    sum.add_ops(T::one(), vec![PauliOp::X; num_sites])
        .expect("cc term");
    sum
}

/// Apply `C` to a state: bitwise complement permutation of amplitudes.
pub fn apply_charge_conjugation<T: Scalar>(state: &Statevector<T>) -> Statevector<T> {
    let dim = state.dim();
    let mask = dim - 1;
    let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
    for (i, amp) in state.amplitudes().iter().enumerate() {
        amps[!i & mask] = *amp;
    }
    Statevector::from_amplitudes(amps).expect("same dimension")
}

/// Reference state `|0...0>` (all spins up).
pub fn reference_state<T: Scalar>(num_sites: usize) -> Result<Statevector<T>> {
    Statevector::all_zero(num_sites)
}
