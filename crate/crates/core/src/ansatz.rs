//! Hardcoded one-magnon trial-state circuits for 2 and 4 sites.
//!
//! The decompositions are data, not algorithms: they were derived by hand
//! for these two chain lengths and do not generalize. Requests for other
//! sizes are rejected at the interface.
//!
//! For `N = 2` the trial state `(0, e^{ip}, 1, 0)/sqrt(2)` is prepared by
//! three gates. For `N = 4` the state is Schmidt-decomposed across the
//! qubit pairs `{3,2} | {1,0}`: a Bell-type layer feeds two two-qubit
//! unitaries `U` (high pair) and `V` (low pair), each expanded into U3
//! and CNOT gates around a shared three-parameter block
//! [`v_block_circuit`]. All identities hold up to a global phase.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gate::Circuit;
use crate::scalar::{cr, lit, Scalar};
use crate::statevector::Statevector;

/// Optimization target: minimize `H` (first excited state) or `-H`
/// (second excited state; meaningful for `N = 2` only, where the highest
/// state is also one-magnon).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    FirstExcited,
    SecondExcited,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::FirstExcited => "first",
            Target::SecondExcited => "second",
        }
    }
}

/// A trial-state family member: chain length, variational parameter, and
/// which extremal state the optimization drives toward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzSpec<T: Scalar> {
    pub num_sites: usize,
    pub p: T,
    pub target: Target,
}

impl<T: Scalar> AnsatzSpec<T> {
    pub fn new(num_sites: usize, p: T, target: Target) -> Result<Self> {
        if num_sites != 2 && num_sites != 4 {
            return Err(Error::UnsupportedSites { sites: num_sites });
        }
        if !p.is_finite() {
            return Err(Error::InvalidParameter("p must be finite".into()));
        }
        if target == Target::SecondExcited && num_sites != 2 {
            return Err(Error::InvalidParameter(
                "the second-excited target exists only for 2 sites".into(),
            ));
        }
        Ok(Self {
            num_sites,
            p,
            target,
        })
    }

    pub fn circuit(&self) -> Circuit<T> {
        match self.num_sites {
            2 => one_magnon_circuit_n2(self.p),
            4 => one_magnon_circuit_n4(self.p),
            _ => unreachable!("validated at construction"),
        }
    }
}

/// Parameters of the shared two-qubit block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitBlockParams<T: Scalar> {
    pub alpha: T,
    pub beta: T,
    pub delta: T,
}

/// Fixed gate count of the 4-site circuit (regression guard).
pub const N4_GATE_COUNT: usize = 27;

/// Trial-state circuit for 2 sites:
/// `X_0 C_{10} U3_1(pi/2, -p, 0) |00>`.
pub fn one_magnon_circuit_n2<T: Scalar>(p: T) -> Circuit<T> {
    let mut c = Circuit::new(2);
    c.u3(T::FRAC_PI_2(), -p, T::zero(), 1)
        .and_then(|c| c.cx(1, 0))
        .and_then(|c| c.x(0))
        .expect("static gate list");
    c
}

/// The two-qubit operator
/// `V(alpha, beta, delta) = Z_1 C_{01} U3_0(-alpha,pi,pi) C_{10}
///  U3_1(0,0,delta) U3_0(-beta,pi,pi) C_{01} U3_0(0,0,-pi/2)`,
/// rightmost factor applied first, on local qubits `{0, 1}`.
pub fn v_block_circuit<T: Scalar>(params: &TwoQubitBlockParams<T>) -> Circuit<T> {
    let pi = T::PI();
    let mut c = Circuit::new(2);
    c.u3(T::zero(), T::zero(), -T::FRAC_PI_2(), 0)
        .and_then(|c| c.cx(0, 1))
        .and_then(|c| c.u3(-params.beta, pi, pi, 0))
        .and_then(|c| c.u3(T::zero(), T::zero(), params.delta, 1))
        .and_then(|c| c.cx(1, 0))
        .and_then(|c| c.u3(-params.alpha, pi, pi, 0))
        .and_then(|c| c.cx(0, 1))
        .and_then(|c| c.z(1))
        .expect("static gate list");
    c
}

/// The Schmidt factor on the high qubit pair, entrywise
/// (row/column index `2*q_hi + q_lo`):
///
/// ```text
/// [ e^{ip/2}        0              0    0            ]
/// [ 0               e^{-ip/2}/r2   0   -e^{ip}/r2    ]
/// [ 0               e^{-3ip/2}/r2  0    1/r2         ]
/// [ 0               0              1    0            ]
/// ```
pub fn u_cal_matrix<T: Scalar>(p: T) -> DMatrix<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let r2inv = cr::<T>(T::one() / (T::one() + T::one()).sqrt());
    let half = lit::<T>(0.5);
    let e = |x: T| Complex::from_polar(T::one(), x);
    let mut m = DMatrix::from_element(4, 4, zero);
    m[(0, 0)] = e(half * p);
    m[(1, 1)] = r2inv * e(-half * p);
    m[(1, 3)] = -r2inv * e(p);
    m[(2, 1)] = r2inv * e(-lit::<T>(1.5) * p);
    m[(2, 3)] = r2inv;
    m[(3, 2)] = Complex::new(T::one(), T::zero());
    m
}

/// The Schmidt factor on the low qubit pair, entrywise.
pub fn v_cal_matrix<T: Scalar>(p: T) -> DMatrix<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let r2inv = cr::<T>(T::one() / (T::one() + T::one()).sqrt());
    let e = |x: T| Complex::from_polar(T::one(), x);
    let mut m = DMatrix::from_element(4, 4, zero);
    m[(0, 1)] = one;
    m[(1, 0)] = r2inv * e(p);
    m[(1, 3)] = -r2inv * e(p);
    m[(2, 0)] = r2inv;
    m[(2, 3)] = r2inv;
    m[(3, 2)] = one;
    m
}

/// Gate expansion of [`u_cal_matrix`] on local qubits `{0, 1}` (valid up
/// to a global phase).
pub fn u_cal_circuit<T: Scalar>(p: T) -> Circuit<T> {
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let half = lit::<T>(0.5);
    let three = lit::<T>(3.0);
    let mut c = Circuit::new(2);
    c.u3(T::zero(), T::zero(), half * (three * pi - p), 0)
        .and_then(|c| c.u3(half_pi, -pi / lit(4.0), half * (three * p + pi), 1))
        .expect("static gate list");
    c.append_mapped(
        &v_block_circuit(&TwoQubitBlockParams {
            alpha: T::zero(),
            beta: half_pi,
            delta: pi / lit(4.0),
        }),
        &[0, 1],
    )
    .expect("same size");
    c.u3(half_pi, half * (pi - p), pi, 0)
        .and_then(|c| c.u3(half_pi, -half * three * p, T::zero(), 1))
        .expect("static gate list");
    c
}

/// Gate expansion of [`v_cal_matrix`] on local qubits `{0, 1}`.
pub fn v_cal_circuit<T: Scalar>(p: T) -> Circuit<T> {
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let half = lit::<T>(0.5);
    let three_quarter_pi = pi * lit::<T>(0.75);
    let mut c = Circuit::new(2);
    c.u3(half_pi, -half_pi, -pi, 0)
        .and_then(|c| c.u3(half_pi, -half_pi, half_pi, 1))
        .expect("static gate list");
    c.append_mapped(
        &v_block_circuit(&TwoQubitBlockParams {
            alpha: half * (lit::<T>(3.0) * pi - p),
            beta: three_quarter_pi,
            delta: three_quarter_pi,
        }),
        &[0, 1],
    )
    .expect("same size");
    c.u3(half_pi, half * p, -half_pi, 0)
        .and_then(|c| c.u3(half_pi, half * (pi - p), T::zero(), 1))
        .expect("static gate list");
    c
}

/// Trial-state circuit for 4 sites:
/// `(U (x) V) C_{31} C_{20} H_2 |0000>` with `U` on qubits `{3,2}` and
/// `V` on qubits `{1,0}`.
pub fn one_magnon_circuit_n4<T: Scalar>(p: T) -> Circuit<T> {
    let mut c = Circuit::new(4);
    c.h(2)
        .and_then(|c| c.cx(2, 0))
        .and_then(|c| c.cx(3, 1))
        .expect("static gate list");
    c.append_mapped(&u_cal_circuit(p), &[2, 3])
        .expect("mapping in range");
    c.append_mapped(&v_cal_circuit(p), &[0, 1])
        .expect("mapping in range");
    debug_assert_eq!(c.len(), N4_GATE_COUNT);
    c
}

/// Direct amplitude construction of the trial states — the ground truth
/// the circuits are verified against.
///
/// `N = 2`: `(0, e^{ip}, 1, 0)/sqrt(2)`.
/// `N = 4`: `(0, e^{3ip/2}, e^{ip/2}, 0, e^{-ip/2}, 0, 0, 0,
///           e^{-3ip/2}, 0, ..., 0)/2`.
pub fn trial_state_reference<T: Scalar>(num_sites: usize, p: T) -> Result<Statevector<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let e = |x: T| Complex::from_polar(T::one(), x);
    match num_sites {
        2 => {
            let r = T::one() / (T::one() + T::one()).sqrt();
            let amps = vec![zero, e(p) * cr(r), cr(r), zero];
            Statevector::from_amplitudes(amps)
        }
        4 => {
            let half = lit::<T>(0.5);
            let mut amps = vec![zero; 16];
            amps[1] = e(lit::<T>(1.5) * p) * cr(half);
            amps[2] = e(half * p) * cr(half);
            amps[4] = e(-half * p) * cr(half);
            amps[8] = e(-lit::<T>(1.5) * p) * cr(half);
            Statevector::from_amplitudes(amps)
        }
        _ => Err(Error::UnsupportedSites { sites: num_sites }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::run_circuit;
    use crate::statevector::{distance_up_to_phase, states_equal_up_to_phase};
    use crate::xxz::{
        apply_charge_conjugation, build_hamiltonian, build_sz, reference_state, XxzParams,
    };
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Dense matrix of a circuit, column by column.
    fn dense_of(c: &Circuit<f64>) -> DMatrix<Complex64> {
        let n = c.num_qubits();
        let dim = 1 << n;
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for col in 0..dim {
            let e = Statevector::computational_basis(n, col).unwrap();
            let out = run_circuit(c, &e).unwrap();
            for row in 0..dim {
                m[(row, col)] = out.amplitude(row);
            }
        }
        m
    }

    /// `min_phi ||A - e^{i phi} B||_F`, phase from the trace overlap.
    fn mat_dist_up_to_phase(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        let ip: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
        let mag = ip.norm();
        if mag < 1e-300 {
            let na: f64 = a.iter().map(|x| x.norm_sqr()).sum();
            let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
            return (na + nb).sqrt();
        }
        let phase = ip.conj() / mag;
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - phase * y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn unitarity_residual(m: &DMatrix<Complex64>) -> f64 {
        let prod = m.adjoint() * m;
        let mut worst = 0.0f64;
        for r in 0..prod.nrows() {
            for c in 0..prod.ncols() {
                let want = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((prod[(r, c)] - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn n2_circuit_hits_reference_vector() {
        for p in [0.0, PI, 1.3] {
            let out = run_circuit(
                &one_magnon_circuit_n2(p),
                &Statevector::all_zero(2).unwrap(),
            )
            .unwrap();
            let want = trial_state_reference(2, p).unwrap();
            assert!(
                states_equal_up_to_phase(&out, &want, 1e-10).unwrap(),
                "p = {p}"
            );
        }
        // p = pi flips the sign of the first component relative to p = 0.
        let want_pi = trial_state_reference(2, PI).unwrap();
        assert!((want_pi.amplitude(1) - Complex64::new(-1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn n2_output_sz_expectation() {
        let out = run_circuit(
            &one_magnon_circuit_n2(0.9),
            &Statevector::all_zero(2).unwrap(),
        )
        .unwrap();
        let sz = build_sz::<f64>(2).expectation(&out).unwrap();
        assert!(sz.abs() < 1e-12, "N/2 - 1 = 0 for two sites");
    }

    #[test]
    fn v_block_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let params = TwoQubitBlockParams {
                alpha: rng.gen_range(-6.3..6.3),
                beta: rng.gen_range(-6.3..6.3),
                delta: rng.gen_range(-6.3..6.3),
            };
            let m = dense_of(&v_block_circuit(&params));
            assert!(unitarity_residual(&m) < 1e-13);
        }
    }

    #[test]
    fn cal_matrices_entries_and_unitarity() {
        let p = 0.7f64;
        let u = u_cal_matrix(p);
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, p / 2.0)).norm() < 1e-15);
        let v = v_cal_matrix(p);
        assert!((v[(0, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let iu = u.adjoint() * &u;
        let iv = v.adjoint() * &v;
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { 1.0 } else { 0.0 };
                assert!((iu[(r, c)] - Complex64::new(want, 0.0)).norm() < 1e-13);
                assert!((iv[(r, c)] - Complex64::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn gate_decompositions_reproduce_cal_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let p = rng.gen_range(-PI..PI);
            let du = mat_dist_up_to_phase(&dense_of(&u_cal_circuit(p)), &u_cal_matrix(p));
            let dv = mat_dist_up_to_phase(&dense_of(&v_cal_circuit(p)), &v_cal_matrix(p));
            assert!(du < 1e-12, "U at p={p}: {du:e}");
            assert!(dv < 1e-12, "V at p={p}: {dv:e}");
        }
        // The specific instances used inside the 4-site circuit.
        let m = dense_of(&v_block_circuit(&TwoQubitBlockParams {
            alpha: 0.0,
            beta: PI / 2.0,
            delta: PI / 4.0,
        }));
        assert!(unitarity_residual(&m) < 1e-13);
    }

    #[test]
    fn n4_circuit_hits_reference_vector() {
        for p in [0.0, 1.1, 2.7, -0.4] {
            let out = run_circuit(
                &one_magnon_circuit_n4(p),
                &Statevector::all_zero(4).unwrap(),
            )
            .unwrap();
            let want = trial_state_reference(4, p).unwrap();
            let d = distance_up_to_phase(&out, &want).unwrap();
            assert!(d < 1e-10, "p = {p}: {d:e}");
        }
    }

    #[test]
    fn n4_support_pattern() {
        let out = run_circuit(
            &one_magnon_circuit_n4(0.37f64),
            &Statevector::all_zero(4).unwrap(),
        )
        .unwrap();
        for idx in 0..16 {
            let mag = out.amplitude(idx).norm();
            if [1usize, 2, 4, 8].contains(&idx) {
                assert!((mag - 0.5).abs() < 1e-12, "idx {idx}: {mag}");
            } else {
                assert!(mag < 1e-12, "idx {idx}: {mag}");
            }
        }
    }

    #[test]
    fn n4_gate_count_regression() {
        assert_eq!(one_magnon_circuit_n4(0.3).len(), N4_GATE_COUNT);
    }

    #[test]
    fn circuit_formula_agreement_random_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let p = rng.gen_range(-PI..PI);
            for n in [2usize, 4] {
                let spec = AnsatzSpec::new(n, p, Target::FirstExcited).unwrap();
                let out = run_circuit(&spec.circuit(), &Statevector::all_zero(n).unwrap()).unwrap();
                let want = trial_state_reference(n, p).unwrap();
                assert!(states_equal_up_to_phase(&out, &want, 1e-10).unwrap());
            }
        }
    }

    #[test]
    fn orthogonal_to_both_ground_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..10 {
            let p = rng.gen_range(-PI..PI);
            for n in [2usize, 4] {
                let psi = trial_state_reference(n, p).unwrap();
                let up = reference_state::<f64>(n).unwrap();
                let down = apply_charge_conjugation(&up);
                assert!(up.inner(&psi).unwrap().norm() < 1e-12);
                assert!(down.inner(&psi).unwrap().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn energy_on_grid_matches_closed_forms() {
        let eta = 1.0f64;
        let ch = eta.cosh();
        for p in [0.0, PI / 3.0, PI] {
            let h2 = build_hamiltonian(&XxzParams::new(2, eta).unwrap());
            let e2 = h2
                .expectation(&trial_state_reference(2, p).unwrap())
                .unwrap();
            assert!((e2 - (ch - p.cos())).abs() < 1e-12, "N=2 p={p}");

            let h4 = build_hamiltonian(&XxzParams::new(4, eta).unwrap());
            let e4 = h4
                .expectation(&trial_state_reference(4, p).unwrap())
                .unwrap();
            assert!((e4 - (ch - p.cos().powi(3))).abs() < 1e-12, "N=4 p={p}");
        }
    }

    #[test]
    fn reference_periodicity_in_p() {
        let p0 = trial_state_reference(4, 0.0).unwrap();
        let p2pi = trial_state_reference(4, 2.0 * PI).unwrap();
        // Half-angle components: period 4pi exactly, 2pi up to phase.
        assert!(states_equal_up_to_phase(&p0, &p2pi, 1e-10).unwrap());
        let pa = trial_state_reference(4, 1.3).unwrap();
        let pb = trial_state_reference(4, 1.3 + 4.0 * PI).unwrap();
        for i in 0..16 {
            assert!((pa.amplitude(i) - pb.amplitude(i)).norm() < 1e-12);
        }
        for p in [-2.0f64, 0.0, 3.9] {
            assert!((trial_state_reference(4, p).unwrap().norm() - 1.0).abs() < 1e-13);
            assert!((trial_state_reference(2, p).unwrap().norm() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(AnsatzSpec::new(3, 0.0, Target::FirstExcited).is_err());
        assert!(AnsatzSpec::new(4, 0.0, Target::SecondExcited).is_err());
        assert!(AnsatzSpec::new(2, f64::NAN, Target::FirstExcited).is_err());
        assert!(AnsatzSpec::new(2, 0.0, Target::SecondExcited).is_ok());
        assert!(trial_state_reference(6, 0.0f64).is_err());
    }
}
