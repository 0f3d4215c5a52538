//! Bethe roots: momentum/rapidity change of variable, residuals of the
//! Bethe equations, the real-root solver, state construction and energy.
//!
//! Rapidity and momentum are related by
//! `sin(v + i eta/2) / sin(v - i eta/2) = e^{-ip}`; for real `v` the
//! left side has unit modulus, so `p` is real too, with the closed form
//! `tan v = -tanh(eta/2) cot(p/2)` (`v` lives on a cylinder of period
//! pi, `p` of period 2 pi).
//!
//! For real root sectors the Bethe equations are solved in logarithmic
//! form. With the continuous odd branch
//! `q(v, s) = 2 atan2(sin v~, tanh(s) cos v~) + 2 pi round(v/pi)`
//! (`v~` the reduction of `v` to `[-pi/2, pi/2]`), the equations read
//!
//! ```text
//! N q(v_j, eta/2) = sum_{k != j} q(v_j - v_k, eta) + 2 pi I_j ,
//! ```
//!
//! where the quantum numbers `I_j` are integers when `N - M` is odd and
//! half-odd integers when `N - M` is even (the branch constants of the
//! odd form fix the class; the solver validates it). Callers pass plain
//! integers `n_j`; the effective quantum number is `I_j = n_j + tau/2`
//! with `tau = (N - M + 1) mod 2`. The energy normalization carries the
//! `sinh^2(eta)` factor that makes the one-magnon energy equal
//! `cosh(eta) - cos(p)` — fixed against the diagonalization oracle.

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{ci, cr, lit, Scalar};
use crate::statevector::Statevector;
use crate::xxz::{reference_state, DENSE_DIAG_CAP};

use super::monodromy::apply_b_operator;

/// A solved (or asserted) set of `M` magnon parameters for an `N`-site
/// chain: momenta `p_j` and rapidities `v_j`, pairwise distinct and
/// mutually consistent under the defining relation.
#[derive(Debug, Clone)]
pub struct BetheRoots<T: Scalar> {
    pub num_sites: usize,
    pub eta: T,
    momenta: Vec<Complex<T>>,
    rapidities: Vec<Complex<T>>,
}

impl<T: Scalar> BetheRoots<T> {
    /// Build from real momenta; rapidities follow from the change of
    /// variable. Roots must stay pairwise distinct (mod the rapidity
    /// period pi).
    pub fn from_momenta(num_sites: usize, eta: T, momenta: &[T]) -> Result<Self> {
        if momenta.is_empty() || momenta.len() > num_sites / 2 {
            return Err(Error::InvalidParameter(format!(
                "magnon count must lie in 1..=N/2, got {} for N={num_sites}",
                momenta.len()
            )));
        }
        let rapidities: Vec<Complex<T>> = momenta.iter().map(|&p| p_to_v(p, eta)).collect();
        let roots = Self {
            num_sites,
            eta,
            momenta: momenta.iter().map(|&p| cr(p)).collect(),
            rapidities,
        };
        roots.check_distinct()?;
        Ok(roots)
    }

    fn from_real_rapidities(num_sites: usize, eta: T, rapidities: Vec<T>) -> Result<Self> {
        let momenta = rapidities.iter().map(|&v| v_to_p(cr(v), eta)).collect();
        let roots = Self {
            num_sites,
            eta,
            momenta,
            rapidities: rapidities.into_iter().map(cr).collect(),
        };
        roots.check_distinct()?;
        Ok(roots)
    }

    fn check_distinct(&self) -> Result<()> {
        let mut min_d = T::infinity();
        for j in 0..self.rapidities.len() {
            for k in 0..j {
                let d = self.rapidities[j] - self.rapidities[k];
                // Distance on the cylinder of period pi.
                let wrapped = d.re - T::PI() * Float::round(d.re / T::PI());
                let dist = Float::hypot(wrapped, d.im);
                if dist < min_d {
                    min_d = dist;
                }
            }
        }
        if min_d < lit(1e-8) {
            return Err(Error::CollidingRoots {
                min_distance: min_d.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn num_magnons(&self) -> usize {
        self.momenta.len()
    }

    pub fn momenta(&self) -> &[Complex<T>] {
        &self.momenta
    }

    pub fn rapidities(&self) -> &[Complex<T>] {
        &self.rapidities
    }

    /// `{"N", "M", "eta", "p", "v_re", "v_im", "residuals", "energy"}`.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let residuals = bethe_residuals(self);
        let energy = bethe_energy(self)?;
        Ok(serde_json::json!({
            "N": self.num_sites,
            "M": self.num_magnons(),
            "eta": self.eta.to_f64(),
            "p": self.momenta.iter().map(|p| p.re.to_f64()).collect::<Vec<_>>(),
            "v_re": self.rapidities.iter().map(|v| v.re.to_f64()).collect::<Vec<_>>(),
            "v_im": self.rapidities.iter().map(|v| v.im.to_f64()).collect::<Vec<_>>(),
            "residuals": residuals.iter().map(|r| r.to_f64()).collect::<Vec<_>>(),
            "energy": energy.to_f64(),
        }))
    }
}

/// Rapidity for a real momentum: `tan v = -tanh(eta/2) cot(p/2)`, with
/// `v = pi/2` at `p = 0 (mod 2 pi)` by continuity. The result lies in
/// `(-pi/2, pi/2]` (imaginary part zero).
pub fn p_to_v<T: Scalar>(p: T, eta: T) -> Complex<T> {
    let two = T::one() + T::one();
    let half = T::one() / two;
    let two_pi = two * T::PI();
    let pr = p - two_pi * Float::round(p / two_pi);
    let (s, c) = (Float::sin(pr * half), Float::cos(pr * half));
    let t = Float::tanh(eta * half);
    if Float::abs(s) < lit(1e-300) {
        return cr(T::FRAC_PI_2());
    }
    // Reduce into the fundamental rapidity domain (-pi/2, pi/2].
    let mut v = Float::atan2(-t * c, s);
    if v > T::FRAC_PI_2() {
        v -= T::PI();
    } else if v <= -T::FRAC_PI_2() {
        v += T::PI();
    }
    cr(v)
}

/// Momentum for a rapidity: `p = i Log(sin(v + i eta/2)/sin(v - i eta/2))`
/// with the principal branch, so real parts land in `(-pi, pi]`. Real
/// rapidities give real momenta.
pub fn v_to_p<T: Scalar>(v: Complex<T>, eta: T) -> Complex<T> {
    let half = T::one() / (T::one() + T::one());
    let shift = ci(eta * half);
    let ratio = (v + shift).sin() / (v - shift).sin();
    let log = ratio.ln();
    let mut p = ci(T::one()) * log;
    if p.re <= -T::PI() {
        p.re += (T::one() + T::one()) * T::PI();
    }
    // Scrub the numerical dust off real-rapidity momenta.
    if v.im == T::zero() && Float::abs(p.im) < T::epsilon() * lit(64.0) {
        p.im = T::zero();
    }
    p
}

/// `|sin(v + i eta/2)/sin(v - i eta/2) - e^{-ip}|`.
pub fn defining_relation_residual<T: Scalar>(p: Complex<T>, v: Complex<T>, eta: T) -> T {
    let half = T::one() / (T::one() + T::one());
    let shift = ci(eta * half);
    let ratio = (v + shift).sin() / (v - shift).sin();
    (ratio - (-ci(T::one()) * p).exp()).norm()
}

/// Continuous odd-branch phase `q(v, s)`; strictly increasing in `v`,
/// `q(v + pi) = q(v) + 2 pi`.
fn phase_odd<T: Scalar>(v: T, tanh_s: T) -> T {
    let m = Float::round(v / T::PI());
    let vt = v - m * T::PI();
    let two = T::one() + T::one();
    two * Float::atan2(Float::sin(vt), tanh_s * Float::cos(vt)) + two * T::PI() * m
}

/// `d q / d v = 2 t / (t^2 cos^2 v + sin^2 v)`.
fn phase_odd_deriv<T: Scalar>(v: T, tanh_s: T) -> T {
    let (s, c) = (Float::sin(v), Float::cos(v));
    let two = T::one() + T::one();
    two * tanh_s / (tanh_s * tanh_s * c * c + s * s)
}

/// Inverse of [`phase_odd`].
fn phase_odd_inverse<T: Scalar>(q: T, tanh_s: T) -> T {
    let two = T::one() + T::one();
    let two_pi = two * T::PI();
    let m = Float::round(q / two_pi);
    let qt = q - m * two_pi;
    let half = T::one() / two;
    Float::atan2(tanh_s * Float::sin(qt * half), Float::cos(qt * half)) + m * T::PI()
}

/// Residuals `|LHS_j - RHS_j|` of the Bethe equations in product form:
/// `(sin(v_j + i eta/2)/sin(v_j - i eta/2))^N
///  = prod_{k != j} sin(v_j - v_k + i eta)/sin(v_j - v_k - i eta)`.
pub fn bethe_residuals<T: Scalar>(roots: &BetheRoots<T>) -> Vec<T> {
    let n = roots.num_sites as i32;
    let half = T::one() / (T::one() + T::one());
    let shift_half = ci(roots.eta * half);
    let shift_full = ci(roots.eta);
    let vs = roots.rapidities();
    vs.iter()
        .enumerate()
        .map(|(j, &vj)| {
            let lhs = ((vj + shift_half).sin() / (vj - shift_half).sin()).powi(n);
            let mut rhs = Complex::new(T::one(), T::zero());
            for (k, &vk) in vs.iter().enumerate() {
                if k != j {
                    let d = vj - vk;
                    rhs *= (d + shift_full).sin() / (d - shift_full).sin();
                }
            }
            (lhs - rhs).norm()
        })
        .collect()
}

/// Default quantum numbers `n_j` for the extremal state of a sector: the
/// (most) symmetric admissible ladder with unit spacing. For `M = N/2`
/// (the ground-state sector of `-H`) this is exactly symmetric.
pub fn default_quantum_numbers(num_sites: usize, num_magnons: usize) -> Result<Vec<i64>> {
    if num_magnons == 0 || num_magnons > num_sites / 2 {
        return Err(Error::InvalidParameter(format!(
            "magnon count must lie in 1..=N/2, got {num_magnons} for N={num_sites}"
        )));
    }
    let m = num_magnons as i64;
    let tau = ((num_sites as i64 - m + 1) % 2).abs();
    // I_j = n_j + tau/2 should be centered on zero: 2 I_j spans
    // 2 n_j + tau in steps of 2; center of 2I is 2*base + tau + (m-1).
    // Choose base so the center is 0 when the parities allow, else -1.
    let center_parity = (tau + m - 1) % 2;
    let center2 = -center_parity; // 0 or -1 in units of 2I
    let base2 = center2 - (m - 1) - tau; // 2*n_1
    debug_assert_eq!(base2 % 2, 0);
    let base = base2 / 2;
    Ok((0..m).map(|j| base + j).collect())
}

/// Solve the Bethe equations for a real root set, damped Newton with a
/// fixed-point fallback. `quantum_numbers[j]` are the integers `n_j`
/// (effective `I_j = n_j + tau/2`, `tau = (N - M + 1) mod 2`), pairwise
/// distinct. Deterministic for fixed inputs.
pub fn solve_bethe_real<T: Scalar + RealField>(
    num_sites: usize,
    num_magnons: usize,
    eta: T,
    quantum_numbers: &[i64],
) -> Result<BetheRoots<T>> {
    if num_sites < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 sites, got {num_sites}"
        )));
    }
    if num_magnons == 0 || num_magnons > num_sites / 2 {
        return Err(Error::InvalidParameter(format!(
            "magnon count must lie in 1..=N/2, got {num_magnons} for N={num_sites}"
        )));
    }
    if quantum_numbers.len() != num_magnons {
        return Err(Error::InvalidQuantumNumbers(format!(
            "expected {num_magnons} quantum numbers, got {}",
            quantum_numbers.len()
        )));
    }
    let mut sorted = quantum_numbers.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != num_magnons {
        return Err(Error::InvalidQuantumNumbers(
            "quantum numbers must be pairwise distinct".into(),
        ));
    }

    let m = num_magnons;
    let nf = lit::<T>(num_sites as f64);
    let tau = (num_sites + 1).wrapping_sub(num_magnons) % 2;
    let half = T::one() / (T::one() + T::one());
    let two_pi = (T::one() + T::one()) * T::PI();
    let targets: Vec<T> = sorted
        .iter()
        .map(|&njj| two_pi * (lit::<T>(njj as f64) + if tau == 1 { half } else { T::zero() }))
        .collect();
    let t_half = Float::tanh(eta * half);
    let t_full = Float::tanh(eta);

    // Free-magnon initial guess.
    let mut v: Vec<T> = targets
        .iter()
        .map(|&t2| phase_odd_inverse(t2 / nf, t_half))
        .collect();

    let residual_inf = |v: &[T]| -> (Vec<T>, T) {
        let mut f = vec![T::zero(); m];
        let mut worst = T::zero();
        for j in 0..m {
            let mut acc = nf * phase_odd(v[j], t_half) - targets[j];
            for k in 0..m {
                if k != j {
                    acc -= phase_odd(v[j] - v[k], t_full);
                }
            }
            f[j] = acc;
            let a = Float::abs(acc);
            if a > worst {
                worst = a;
            }
        }
        (f, worst)
    };

    let tol = lit::<T>(1e-12) * (T::one() + nf / lit(64.0));
    let max_iters = 500usize;
    let (mut f, mut fnorm) = residual_inf(&v);
    let mut iterations = 0usize;
    while fnorm > tol && iterations < max_iters {
        iterations += 1;
        // Assemble the Jacobian.
        let mut jac = DMatrix::from_element(m, m, T::zero());
        for j in 0..m {
            let mut diag = nf * phase_odd_deriv(v[j], t_half);
            for k in 0..m {
                if k != j {
                    let d = phase_odd_deriv(v[j] - v[k], t_full);
                    diag -= d;
                    jac[(j, k)] = d;
                }
            }
            jac[(j, j)] = diag;
        }
        let rhs = DVector::from_iterator(m, f.iter().map(|&x| -x));
        let step = jac.lu().solve(&rhs);

        let mut improved = false;
        if let Some(step) = step {
            // Backtracking with damping factor 0.5.
            let mut lambda = T::one();
            for _ in 0..24 {
                let trial: Vec<T> = v
                    .iter()
                    .zip(step.iter())
                    .map(|(&vj, &dj)| vj + lambda * dj)
                    .collect();
                let (tf, tn) = residual_inf(&trial);
                if tn < fnorm {
                    v = trial;
                    f = tf;
                    fnorm = tn;
                    improved = true;
                    break;
                }
                lambda *= half;
            }
        }
        if !improved {
            // Stalled Newton step: one fixed-point sweep
            // v_j <- q^{-1}((2 pi I_j + sum_k q(v_j - v_k, eta)) / N).
            let prev = v.clone();
            for j in 0..m {
                let mut acc = targets[j];
                for (k, &pk) in prev.iter().enumerate() {
                    if k != j {
                        acc += phase_odd(prev[j] - pk, t_full);
                    }
                }
                v[j] = phase_odd_inverse(acc / nf, t_half);
            }
            let (nf2, nn) = residual_inf(&v);
            f = nf2;
            fnorm = nn;
        }
    }

    if fnorm > tol {
        return Err(Error::NonConvergence {
            iterations,
            residual: fnorm.to_f64().unwrap_or(f64::NAN),
        });
    }

    let roots = BetheRoots::from_real_rapidities(num_sites, eta, v)?;
    // The product-form residuals are the contract; re-check them.
    let worst = bethe_residuals(&roots)
        .into_iter()
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    if worst > lit(1e-10) {
        return Err(Error::NonConvergence {
            iterations,
            residual: worst.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(roots)
}

/// Magnon-sum energy:
/// `E = (sinh^2(eta)/2) sum_j 1/(sin(v_j + i eta/2) sin(v_j - i eta/2))`,
/// equal to `sum_j (cosh(eta) - cos p_j)` for real roots. The
/// `sinh^2(eta)` normalization is pinned by the diagonalization oracle.
pub fn bethe_energy<T: Scalar>(roots: &BetheRoots<T>) -> Result<T> {
    let half = T::one() / (T::one() + T::one());
    let shift = ci(roots.eta * half);
    let sh = Float::sinh(roots.eta);
    let mut sum = Complex::new(T::zero(), T::zero());
    for &v in roots.rapidities() {
        let denom = (v + shift).sin() * (v - shift).sin();
        if denom.norm() < lit(1e-12) {
            return Err(Error::Singular(format!(
                "energy summand singular at rapidity {v}"
            )));
        }
        sum += Complex::new(T::one(), T::zero()) / denom;
    }
    let e = sum * cr(sh * sh * half);
    if Float::abs(e.im) > lit(1e-9) {
        return Err(Error::NumericalCheck {
            what: "Bethe energy imaginary residue",
            residual: e.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(e.re)
}

/// Normalized Bethe state `B(v_1) ... B(v_M) |0...0>` (dense cap applies).
pub fn bethe_state<T: Scalar>(roots: &BetheRoots<T>) -> Result<Statevector<T>> {
    if roots.num_sites > DENSE_DIAG_CAP {
        return Err(Error::CapExceeded {
            what: "Bethe state construction",
            cap: DENSE_DIAG_CAP,
            requested: roots.num_sites,
        });
    }
    let mut psi = reference_state::<T>(roots.num_sites)?;
    for &v in roots.rapidities() {
        psi = apply_b_operator(v, roots.eta, &psi);
    }
    psi.normalized().map_err(|_| Error::VanishingNorm)
}
