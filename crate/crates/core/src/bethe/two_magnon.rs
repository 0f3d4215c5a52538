//! Closed-form two-magnon state components for a 4-site chain.
//!
//! For real momenta `p1, p2` the unnormalized state
//! `B(p1) B(p2) |0000>` is proportional to
//!
//! ```text
//! (0, 0, 0, e^{i(p1+p2)}, 0, xi, 1, 0, 0, zeta, xi*, 0, e^{-i(p1+p2)}, 0, 0, 0)
//! ```
//!
//! with amplitudes `xi`, `zeta` given below. Both denominators vanish on
//! the manifold `p1 + p2 = pi (mod 2 pi)`, which is rejected as a domain
//! error rather than regularized.

use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{cr, lit, Scalar};
use crate::statevector::Statevector;

/// The two closed-form amplitudes together with their arguments.
#[derive(Debug, Clone, Copy)]
pub struct TwoMagnonAmplitudes<T: Scalar> {
    pub xi: Complex<T>,
    pub zeta: Complex<T>,
    pub p1: T,
    pub p2: T,
    pub eta: T,
}

/// Assemble the 16-component two-magnon vector (unnormalized).
pub fn two_magnon_components<T: Scalar>(
    p1: T,
    p2: T,
    eta: T,
) -> Result<(TwoMagnonAmplitudes<T>, Statevector<T>)> {
    let e = |x: T| Complex::from_polar(T::one(), x);
    let one = Complex::new(T::one(), T::zero());
    let total = p1 + p2;

    let denom_xi = one + e(-total);
    let denom_zeta = one + e(total);
    // Both vanish exactly when p1 + p2 = pi (mod 2 pi).
    if denom_xi.norm() < lit(1e-9) || denom_zeta.norm() < lit(1e-9) {
        return Err(Error::Singular(format!(
            "two-magnon amplitudes are singular at p1 + p2 = pi (mod 2 pi); got p1 + p2 = {total}"
        )));
    }

    let two_cosh = cr((T::one() + T::one()) * Float::cosh(eta));
    let xi = (e(p1) + e(-p1) + e(p2) + e(-p2) - two_cosh) / denom_xi;
    let zeta = (one + e(p1 + p1) + e(p2 + p2) + e(p1 - p2) + e(p2 - p1) + e(total)
        - two_cosh * (e(p1) + e(p2)))
        / denom_zeta;

    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 16];
    amps[3] = e(total);
    amps[5] = xi;
    amps[6] = one;
    amps[9] = zeta;
    amps[10] = xi.conj();
    amps[12] = e(-total);
    let state = Statevector::from_amplitudes(amps)?;
    Ok((
        TwoMagnonAmplitudes {
            xi,
            zeta,
            p1,
            p2,
            eta,
        },
        state,
    ))
}
