//! Derivative-free variational minimization of the trial-state energy.
//!
//! The search space is a single real parameter, so the optimizer is a
//! bracketing pass followed by golden-section refinement rather than a
//! general simplex method: the landscapes are smooth and 2 pi periodic,
//! and the acceptance contract constrains only the converged optimum.
//! The optimizer itself is deterministic; all randomness lives in the
//! sampled backend, which derives one sub-seed per objective evaluation
//! from the run seed.

use num_traits::Float;

use crate::ansatz::{AnsatzSpec, Target};
use crate::error::{Error, Result};
use crate::gate::run_circuit;
use crate::pauli::PauliSum;
use crate::sampling::estimate_energy_sampled;
use crate::scalar::{lit, Scalar};
use crate::statevector::Statevector;

/// Configuration of a scalar minimization run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig<T: Scalar> {
    /// Starting parameter value.
    pub initial: T,
    /// Evaluation budget (>= 1).
    pub max_evaluations: usize,
    /// Convergence tolerance on the bracket width (> 0).
    pub tolerance: T,
    /// Base seed for sampled backends.
    pub seed: u64,
}

impl<T: Scalar> Default for OptimizerConfig<T> {
    fn default() -> Self {
        Self {
            initial: lit(0.8),
            max_evaluations: 60,
            tolerance: lit(1e-7),
            seed: 1,
        }
    }
}

impl<T: Scalar> OptimizerConfig<T> {
    fn validate(&self) -> Result<()> {
        if self.max_evaluations == 0 {
            return Err(Error::InvalidParameter(
                "evaluation budget must be >= 1".into(),
            ));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail too
        if !(self.tolerance > T::zero()) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of [`minimize_scalar`].
#[derive(Debug, Clone)]
pub struct ScalarMinimum<T: Scalar> {
    pub p: T,
    pub value: T,
    /// Every `(p, f(p))` evaluation in order.
    pub trace: Vec<(T, T)>,
    pub evaluations: usize,
    /// False when the budget ran out before the bracket shrank below
    /// tolerance (best-so-far is still returned).
    pub converged: bool,
}

/// Minimize a scalar function of one real variable: expand a bracket
/// around `initial`, then golden-section it down to `tolerance`.
pub fn minimize_scalar<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    config: &OptimizerConfig<T>,
) -> Result<ScalarMinimum<T>> {
    config.validate()?;
    let budget = config.max_evaluations;
    let mut trace: Vec<(T, T)> = Vec::with_capacity(budget);
    let mut eval = |p: T, trace: &mut Vec<(T, T)>| -> T {
        let v = f(p);
        trace.push((p, v));
        v
    };

    let p0 = config.initial;
    let step = lit::<T>(0.8);
    let grow = lit::<T>(1.6);
    // Bracket expansion is capped a little above one landscape period.
    let span_cap = lit::<T>(8.0);

    let mut m = p0;
    let mut fm = eval(m, &mut trace);
    let mut converged = false;
    if budget >= 3 {
        let mut a = p0 - step;
        let mut b = p0 + step;
        let mut fa = eval(a, &mut trace);
        let mut fb = eval(b, &mut trace);
        // Walk downhill until the middle point is a local minimum.
        while !(fm <= fa && fm <= fb) && trace.len() < budget && (b - a) < span_cap {
            if fa < fb {
                let new_a = a - grow * (m - a);
                b = m;
                fb = fm;
                m = a;
                fm = fa;
                a = new_a;
                fa = eval(a, &mut trace);
            } else {
                let new_b = b + grow * (b - m);
                a = m;
                fa = fm;
                m = b;
                fm = fb;
                b = new_b;
                fb = eval(b, &mut trace);
            }
        }

        // Golden-section refinement inside [a, b].
        let gr = (Float::sqrt(lit::<T>(5.0)) - T::one()) / (T::one() + T::one());
        let mut x1 = b - gr * (b - a);
        let mut x2 = a + gr * (b - a);
        if trace.len() + 2 <= budget {
            let mut f1 = eval(x1, &mut trace);
            let mut f2 = eval(x2, &mut trace);
            while trace.len() < budget && (b - a) > config.tolerance {
                if f1 < f2 {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = eval(x1, &mut trace);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = eval(x2, &mut trace);
                }
            }
            converged = (b - a) <= config.tolerance;
        }
    }

    let (best_p, best_v) = trace
        .iter()
        .copied()
        .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        .expect("at least one evaluation");
    Ok(ScalarMinimum {
        p: best_p,
        value: best_v,
        evaluations: trace.len(),
        trace,
        converged,
    })
}

/// Energy evaluation backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exact expectation value from the statevector.
    Exact,
    /// Finite-shot estimate; `shots` is the per-measurement-setting count.
    Sampled { shots: u64, seed: u64 },
}

impl Backend {
    pub fn describe(&self) -> String {
        match self {
            Backend::Exact => "exact-statevector".to_string(),
            Backend::Sampled { shots, .. } => format!("sampled({shots} shots/setting)"),
        }
    }
}

/// Converged result of a VQE run.
#[derive(Debug, Clone)]
pub struct VqeResult<T: Scalar> {
    /// Best energy (absolute value of the best objective for the
    /// second-excited target).
    pub energy: T,
    /// Optimal parameter, reported mod 2 pi into (-pi, pi].
    pub p: T,
    /// All `(p, objective)` evaluations; for the second-excited target
    /// the objective is `-<H>`.
    pub trace: Vec<(T, T)>,
    pub evaluations: usize,
    pub converged: bool,
    pub target: Target,
    pub backend: String,
}

impl<T: Scalar> VqeResult<T> {
    /// `{"N","eta","target","backend","shots","seed","energy","p",
    ///   "evaluations","trace"}`.
    pub fn to_json(&self, num_sites: usize, eta: T, backend: &Backend) -> serde_json::Value {
        let (shots, seed) = match backend {
            Backend::Exact => (serde_json::Value::Null, serde_json::Value::Null),
            Backend::Sampled { shots, seed } => ((*shots).into(), (*seed).into()),
        };
        serde_json::json!({
            "N": num_sites,
            "eta": eta.to_f64(),
            "target": self.target.as_str(),
            "backend": self.backend,
            "shots": shots,
            "seed": seed,
            "energy": self.energy.to_f64(),
            "p": self.p.to_f64(),
            "evaluations": self.evaluations,
            "converged": self.converged,
            "trace": self.trace.iter()
                .map(|(p, e)| serde_json::json!([p.to_f64(), e.to_f64()]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Map into `(-pi, pi]`.
fn wrap_angle<T: Scalar>(p: T) -> T {
    let two_pi = (T::one() + T::one()) * T::PI();
    let mut w = p - two_pi * Float::round(p / two_pi);
    if w <= -T::PI() {
        w += two_pi;
    } else if w > T::PI() {
        w -= two_pi;
    }
    w
}

/// SplitMix64-style per-evaluation seed derivation.
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Energy of the ansatz state at parameter `p` under the given backend.
fn backend_energy<T: Scalar>(
    ansatz: &AnsatzSpec<T>,
    p: T,
    hamiltonian: &PauliSum<T>,
    backend: &Backend,
    eval_index: u64,
) -> Result<T> {
    let spec = AnsatzSpec::new(ansatz.num_sites, p, ansatz.target)?;
    let state = run_circuit(&spec.circuit(), &Statevector::all_zero(spec.num_sites)?)?;
    match backend {
        Backend::Exact => hamiltonian.expectation(&state),
        Backend::Sampled { shots, seed } => {
            estimate_energy_sampled(&state, hamiltonian, *shots, mix_seed(*seed, eval_index))
        }
    }
}

/// Run the variational loop: minimize the backend energy of the ansatz
/// family over `p` (the objective is `-<H>` for the second-excited
/// target, whose reported energy is then `|f*|`).
pub fn vqe_run<T: Scalar>(
    ansatz: &AnsatzSpec<T>,
    hamiltonian: &PauliSum<T>,
    backend: &Backend,
    config: &OptimizerConfig<T>,
) -> Result<VqeResult<T>> {
    if hamiltonian.num_qubits() != ansatz.num_sites {
        return Err(Error::DimensionMismatch {
            expected: 1 << ansatz.num_sites,
            actual: 1 << hamiltonian.num_qubits(),
        });
    }
    let negate = ansatz.target == Target::SecondExcited;
    let mut eval_index: u64 = 0;
    let mut failure: Option<Error> = None;
    let minimum = minimize_scalar(
        |p| {
            let idx = eval_index;
            eval_index += 1;
            match backend_energy(ansatz, p, hamiltonian, backend, idx) {
                Ok(e) => {
                    if negate {
                        -e
                    } else {
                        e
                    }
                }
                Err(err) => {
                    failure.get_or_insert(err);
                    T::infinity()
                }
            }
        },
        config,
    )?;
    if let Some(err) = failure {
        return Err(err);
    }
    let energy = if negate {
        Float::abs(minimum.value)
    } else {
        minimum.value
    };
    Ok(VqeResult {
        energy,
        p: wrap_angle(minimum.p),
        trace: minimum.trace,
        evaluations: minimum.evaluations,
        converged: minimum.converged,
        target: ansatz.target,
        backend: backend.describe(),
    })
}

/// Exact-backend energy sweep over a parameter grid.
pub fn energy_landscape<T: Scalar>(
    ansatz: &AnsatzSpec<T>,
    hamiltonian: &PauliSum<T>,
    p_grid: &[T],
) -> Result<Vec<(T, T)>> {
    if p_grid.is_empty() {
        return Err(Error::InvalidParameter("empty parameter grid".into()));
    }
    p_grid
        .iter()
        .map(|&p| {
            Ok((
                p,
                backend_energy(ansatz, p, hamiltonian, &Backend::Exact, 0)?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xxz::{build_hamiltonian, XxzParams};
    use std::f64::consts::PI;

    const COSH1: f64 = 1.5430806348152437;

    fn cfg(initial: f64, budget: usize, tol: f64) -> OptimizerConfig<f64> {
        OptimizerConfig {
            initial,
            max_evaluations: budget,
            tolerance: tol,
            seed: 1,
        }
    }

    #[test]
    fn quadratic_bowl() {
        let r = minimize_scalar(|p| (p - 1.0) * (p - 1.0), &cfg(5.0, 100, 1e-10)).unwrap();
        assert!(r.converged);
        assert!((r.p - 1.0).abs() < 1e-8, "p* = {}", r.p);
    }

    #[test]
    fn cosine_landscape_first() {
        let r = minimize_scalar(|p: f64| COSH1 - p.cos(), &cfg(0.8, 60, 1e-7)).unwrap();
        assert!((r.value - (COSH1 - 1.0)).abs() < 1e-6);
        assert!(wrap_angle(r.p).abs() < 1e-3);
    }

    #[test]
    fn cosine_landscape_second() {
        let r = minimize_scalar(|p: f64| p.cos() - COSH1, &cfg(2.0, 60, 1e-7)).unwrap();
        assert!((r.value - (-COSH1 - 1.0)).abs() < 1e-6);
        assert!((wrap_angle(r.p).abs() - PI).abs() < 1e-3);
    }

    #[test]
    fn budget_exhaustion_flags_nonconverged() {
        let r = minimize_scalar(|p: f64| (p - 1.0).powi(2), &cfg(40.0, 8, 1e-12)).unwrap();
        assert!(!r.converged);
        assert!(r.evaluations <= 8);
        // Best-so-far is still the minimum of the trace.
        let min = r
            .trace
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(min, r.value);
    }

    #[test]
    fn vqe_n2_exact_first_and_second() {
        let h = build_hamiltonian(&XxzParams::new(2, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(2, 0.0, Target::FirstExcited).unwrap();
        let r = vqe_run(&ansatz, &h, &Backend::Exact, &cfg(0.8, 60, 1e-7)).unwrap();
        assert!((r.energy - (COSH1 - 1.0)).abs() < 1e-6, "E = {}", r.energy);
        assert!(r.p.abs() < 1e-3);

        let ansatz = AnsatzSpec::new(2, 0.0, Target::SecondExcited).unwrap();
        let r = vqe_run(&ansatz, &h, &Backend::Exact, &cfg(2.0, 60, 1e-7)).unwrap();
        assert!((r.energy - (COSH1 + 1.0)).abs() < 1e-6, "E = {}", r.energy);
        assert!((r.p.abs() - PI).abs() < 1e-3, "p = {}", r.p);
    }

    #[test]
    fn vqe_n4_exact() {
        let h = build_hamiltonian(&XxzParams::new(4, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(4, 0.0, Target::FirstExcited).unwrap();
        let r = vqe_run(&ansatz, &h, &Backend::Exact, &cfg(0.8, 60, 1e-7)).unwrap();
        assert!((r.energy - (COSH1 - 1.0)).abs() < 1e-4, "E = {}", r.energy);
        assert!(r.p.abs() < 1e-2);
    }

    #[test]
    fn landscape_matches_closed_forms_pointwise() {
        for &eta in &[0.5f64, 1.0, 2.0] {
            let ch = eta.cosh();
            for &(n, pow) in &[(2usize, 1i32), (4, 3)] {
                let h = build_hamiltonian(&XxzParams::new(n, eta).unwrap());
                let ansatz = AnsatzSpec::new(n, 0.0, Target::FirstExcited).unwrap();
                let grid: Vec<f64> = (0..61).map(|k| -PI + 2.0 * PI * k as f64 / 60.0).collect();
                let sweep = energy_landscape(&ansatz, &h, &grid).unwrap();
                for (p, e) in sweep {
                    let want = ch - p.cos().powi(pow);
                    assert!((e - want).abs() < 1e-10, "n={n} eta={eta} p={p}");
                }
            }
        }
    }

    #[test]
    fn landscape_minimum_consistent_with_vqe() {
        let h = build_hamiltonian(&XxzParams::new(2, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(2, 0.0, Target::FirstExcited).unwrap();
        let grid: Vec<f64> = (0..721)
            .map(|k| -PI + 2.0 * PI * k as f64 / 720.0)
            .collect();
        let sweep = energy_landscape(&ansatz, &h, &grid).unwrap();
        let grid_min = sweep.iter().map(|&(_, e)| e).fold(f64::INFINITY, f64::min);
        let r = vqe_run(&ansatz, &h, &Backend::Exact, &cfg(0.8, 60, 1e-7)).unwrap();
        assert!((grid_min - r.energy).abs() < 1e-5);
    }

    #[test]
    fn monotone_best_so_far() {
        let h = build_hamiltonian(&XxzParams::new(2, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(2, 0.0, Target::FirstExcited).unwrap();
        let backend = Backend::Sampled {
            shots: 256,
            seed: 3,
        };
        let r = vqe_run(&ansatz, &h, &backend, &cfg(0.8, 40, 1e-7)).unwrap();
        let mut best = f64::INFINITY;
        let mut bests = Vec::new();
        for &(_, v) in &r.trace {
            best = best.min(v);
            bests.push(best);
        }
        assert!(bests.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(
            *bests.last().unwrap(),
            r.trace.iter().map(|t| t.1).fold(f64::INFINITY, f64::min)
        );
    }

    #[test]
    fn sampled_runs_are_bit_deterministic() {
        let h = build_hamiltonian(&XxzParams::new(2, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(2, 0.0, Target::FirstExcited).unwrap();
        let backend = Backend::Sampled {
            shots: 512,
            seed: 9,
        };
        let a = vqe_run(&ansatz, &h, &backend, &cfg(0.8, 30, 1e-7)).unwrap();
        let b = vqe_run(&ansatz, &h, &backend, &cfg(0.8, 30, 1e-7)).unwrap();
        let ja = serde_json::to_string(&a.to_json(2, 1.0, &backend)).unwrap();
        let jb = serde_json::to_string(&b.to_json(2, 1.0, &backend)).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn sampled_objective_is_unbiased() {
        // Mean over 50 seeds of the sampled objective at a fixed p, vs
        // the exact value, within 3 standard errors of the mean.
        let h = build_hamiltonian(&XxzParams::new(2, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(2, 0.7, Target::FirstExcited).unwrap();
        let state = run_circuit(&ansatz.circuit(), &Statevector::all_zero(2).unwrap()).unwrap();
        let exact = h.expectation(&state).unwrap();
        let shots = 1000u64;
        let samples: Vec<f64> = (0..50)
            .map(|s| estimate_energy_sampled(&state, &h, shots, s).unwrap())
            .collect();
        let mean = samples.iter().sum::<f64>() / 50.0;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 49.0;
        let sem = (var / 50.0).sqrt();
        assert!(
            (mean - exact).abs() < 3.0 * sem,
            "mean {mean}, exact {exact}, sem {sem}"
        );
    }

    #[test]
    fn config_validation() {
        let bad = OptimizerConfig::<f64> {
            max_evaluations: 0,
            ..Default::default()
        };
        assert!(minimize_scalar(|p| p, &bad).is_err());
        let bad = OptimizerConfig::<f64> {
            tolerance: 0.0,
            ..Default::default()
        };
        assert!(minimize_scalar(|p| p, &bad).is_err());
    }

    #[test]
    fn ansatz_hamiltonian_mismatch() {
        let h = build_hamiltonian(&XxzParams::new(4, 1.0).unwrap());
        let ansatz = AnsatzSpec::new(2, 0.0, Target::FirstExcited).unwrap();
        assert!(vqe_run(&ansatz, &h, &Backend::Exact, &cfg(0.8, 10, 1e-6)).is_err());
    }
}
