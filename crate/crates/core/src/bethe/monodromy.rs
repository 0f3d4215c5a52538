//! Monodromy matrix, transfer matrix, and the Hamiltonian they generate.
//!
//! The monodromy matrix is `T_0(v) = R_{0N}(v) ... R_{01}(v)` with
//! auxiliary space 0 and quantum spaces `1..=N` (labeled left to right,
//! as is standard for the algebraic construction). Site `k` is carried by
//! qubit `N - k`; since site 1 is the most significant tensor factor and
//! qubit `N-1` the most significant bit, the matrices produced here are
//! already in the simulator's qubit-0-least-significant basis — the two
//! labeling conventions differ exactly by the site reversal that this map
//! absorbs, so no further index shuffling is needed (the one-magnon block
//! applied to `|0...0>` reproduces the printed trial-state vectors
//! verbatim; see the tests).
//!
//! Dense blocks are built by one 2x2-per-site contraction step at a time;
//! vector application ([`apply_b_operator`], [`apply_transfer`]) streams
//! the same contraction over a state in `O(N 2^N)` without materializing
//! any block.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{ci, cr, lit, Scalar};
use crate::statevector::Statevector;

use super::rmatrix::r_matrix;

/// Cap for dense monodromy/transfer construction. At the cap the four
/// blocks hold 4 * 2^24 complex entries; prefer the streaming appliers
/// for states.
pub const MONODROMY_DENSE_CAP: usize = 12;

/// The four `2^N x 2^N` blocks of the monodromy matrix in auxiliary
/// space: `T = [[A, B], [C, D]]`.
#[derive(Debug, Clone)]
pub struct MonodromyBlocks<T: Scalar> {
    pub v: Complex<T>,
    pub eta: T,
    pub num_sites: usize,
    a: DMatrix<Complex<T>>,
    b: DMatrix<Complex<T>>,
    c: DMatrix<Complex<T>>,
    d: DMatrix<Complex<T>>,
}

impl<T: Scalar> MonodromyBlocks<T> {
    pub fn a(&self) -> &DMatrix<Complex<T>> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<Complex<T>> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<Complex<T>> {
        &self.c
    }

    pub fn d(&self) -> &DMatrix<Complex<T>> {
        &self.d
    }

    /// Transfer matrix `t(v) = A(v) + D(v)` (trace over auxiliary space).
    pub fn transfer(&self) -> DMatrix<Complex<T>> {
        &self.a + &self.d
    }
}

/// Single-site blocks of `R_{0k}`: `A = diag(a, b)`, `B = c sigma^-`,
/// `C = c sigma^+`, `D = diag(b, a)` with `a = sin(v + i eta/2)`,
/// `b = sin(v - i eta/2)`, `c = i sinh(eta)`.
fn site_entries<T: Scalar>(v: Complex<T>, eta: T) -> (Complex<T>, Complex<T>, Complex<T>) {
    let half = T::one() / (T::one() + T::one());
    let shift = ci(eta * half);
    ((v + shift).sin(), (v - shift).sin(), ci(eta.sinh()))
}

/// Build the dense monodromy blocks for `N <= MONODROMY_DENSE_CAP`.
pub fn monodromy<T: Scalar>(v: Complex<T>, eta: T, num_sites: usize) -> Result<MonodromyBlocks<T>> {
    if num_sites == 0 || num_sites > MONODROMY_DENSE_CAP {
        return Err(Error::CapExceeded {
            what: "dense monodromy",
            cap: MONODROMY_DENSE_CAP,
            requested: num_sites,
        });
    }
    let r = r_matrix(v, eta);
    let blk = |a_out: usize, a_in: usize| {
        let b = r.aux_block(a_out, a_in);
        DMatrix::from_row_slice(2, 2, &[b[0][0], b[0][1], b[1][0], b[1][1]])
    };
    // Site 1.
    let (mut ta, mut tb, mut tc, mut td) = (blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1));
    // Left-multiply the single-site factor for sites 2..=N. The existing
    // blocks act on sites 1..n (more significant), the new factor on site
    // n+1, so operator products are kron(old, new).
    for _ in 1..num_sites {
        let (sa, sb, sc, sd) = (blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1));
        let na = ta.kronecker(&sa) + tc.kronecker(&sb);
        let nb = tb.kronecker(&sa) + td.kronecker(&sb);
        let nc = ta.kronecker(&sc) + tc.kronecker(&sd);
        let nd = tb.kronecker(&sc) + td.kronecker(&sd);
        ta = na;
        tb = nb;
        tc = nc;
        td = nd;
    }
    Ok(MonodromyBlocks {
        v,
        eta,
        num_sites,
        a: ta,
        b: tb,
        c: tc,
        d: td,
    })
}

/// Dense transfer matrix `t(v)` for `N <= MONODROMY_DENSE_CAP`.
pub fn transfer_matrix<T: Scalar>(
    v: Complex<T>,
    eta: T,
    num_sites: usize,
) -> Result<DMatrix<Complex<T>>> {
    Ok(monodromy(v, eta, num_sites)?.transfer())
}

/// Apply the monodromy block `<a_out| T(v) |a_in>` to a state by streaming
/// the per-site contraction: `O(N 2^N)` time, no dense blocks.
pub fn apply_monodromy_block<T: Scalar>(
    v: Complex<T>,
    eta: T,
    a_out: usize,
    a_in: usize,
    state: &Statevector<T>,
) -> Statevector<T> {
    let n = state.num_qubits();
    let dim = state.dim();
    let zero = Complex::new(T::zero(), T::zero());
    let (ea, eb, ec) = site_entries(v, eta);

    // Auxiliary-space pair of quantum vectors, w[a] = T_{a, a_in} |psi>
    // built site by site (site k acts on qubit n - k).
    let mut w = [vec![zero; dim], vec![zero; dim]];
    w[a_in].copy_from_slice(state.amplitudes());
    for k in 1..=n {
        let bit = 1usize << (n - k);
        for i0 in 0..dim {
            if i0 & bit != 0 {
                continue;
            }
            let i1 = i0 | bit;
            let (w0_0, w0_1) = (w[0][i0], w[0][i1]);
            let (w1_0, w1_1) = (w[1][i0], w[1][i1]);
            // New (A w0 + B w1, C w0 + D w1) with A = diag(a,b) etc.
            w[0][i0] = ea * w0_0;
            w[0][i1] = eb * w0_1 + ec * w1_0;
            w[1][i0] = eb * w1_0 + ec * w0_1;
            w[1][i1] = ea * w1_1;
        }
    }
    Statevector::from_amplitudes(std::mem::take(&mut w[a_out])).expect("dimension unchanged")
}

/// `B(v) |psi>`: the magnon creation block.
pub fn apply_b_operator<T: Scalar>(
    v: Complex<T>,
    eta: T,
    state: &Statevector<T>,
) -> Statevector<T> {
    apply_monodromy_block(v, eta, 0, 1, state)
}

/// `t(v) |psi> = (A(v) + D(v)) |psi>`.
pub fn apply_transfer<T: Scalar>(v: Complex<T>, eta: T, state: &Statevector<T>) -> Statevector<T> {
    let a = apply_monodromy_block(v, eta, 0, 0, state);
    let d = apply_monodromy_block(v, eta, 1, 1, state);
    let amps = a
        .amplitudes()
        .iter()
        .zip(d.amplitudes())
        .map(|(x, y)| x + y)
        .collect();
    Statevector::from_amplitudes(amps).expect("dimension unchanged")
}

/// Reconstruct the Hamiltonian from the transfer matrix:
/// `H = -(i/2) sinh(eta) d/dv log t(v) |_{v = i eta/2} + (N/2) cosh(eta)`,
/// with the derivative taken by a central finite difference and
/// `d/dv log t = t(v0)^{-1} t'(v0)` (valid since the family commutes).
pub fn hamiltonian_from_transfer<T: Scalar + RealField>(
    num_sites: usize,
    eta: T,
    dv: T,
) -> Result<DMatrix<Complex<T>>> {
    if !(dv >= lit(1e-6) && dv <= lit(1e-3)) {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step must lie in [1e-6, 1e-3], got {dv}"
        )));
    }
    let half = T::one() / (T::one() + T::one());
    let v0 = ci(eta * half);
    let t0 = transfer_matrix(v0, eta, num_sites)?;
    let tp = transfer_matrix(v0 + cr(dv), eta, num_sites)?;
    let tm = transfer_matrix(v0 - cr(dv), eta, num_sites)?;
    let inv = t0.try_inverse().ok_or(Error::Singular(
        "transfer matrix not invertible at the evaluation point".into(),
    ))?;
    let two_dv = cr(dv + dv);
    let dlog = inv * ((tp - tm) / two_dv);
    let dim = 1usize << num_sites;
    let prefactor = -ci(half) * cr(Float::sinh(eta));
    let constant = cr(lit::<T>(num_sites as f64) * half * Float::cosh(eta));
    let mut h = dlog * prefactor;
    for i in 0..dim {
        h[(i, i)] += constant;
    }
    Ok(h)
}
