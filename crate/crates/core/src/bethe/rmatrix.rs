//! The shifted trigonometric R-matrix and its Yang–Baxter check.

use num_complex::Complex;

use crate::scalar::{ci, Scalar};

/// 4x4 R-matrix on a pair of two-dimensional spaces:
///
/// ```text
/// [ sin(v + i eta/2)   0                  0                  0 ]
/// [ 0                  sin(v - i eta/2)   i sinh(eta)        0 ]
/// [ 0                  i sinh(eta)        sin(v - i eta/2)   0 ]
/// [ 0                  0                  0   sin(v + i eta/2) ]
/// ```
///
/// At `v = i eta/2` it degenerates to `i sinh(eta)` times the permutation
/// matrix.
#[derive(Debug, Clone)]
pub struct RMatrix<T: Scalar> {
    pub v: Complex<T>,
    pub eta: T,
    entries: [[Complex<T>; 4]; 4],
}

impl<T: Scalar> RMatrix<T> {
    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex<T>; 4]; 4] {
        &self.entries
    }

    /// 2x2 block acting on the second space, indexed by the first space:
    /// `block(a_out, a_in)[q_out][q_in] = R[2 a_out + q_out, 2 a_in + q_in]`.
    pub fn aux_block(&self, a_out: usize, a_in: usize) -> [[Complex<T>; 2]; 2] {
        let mut b = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (q_out, row) in b.iter_mut().enumerate() {
            for (q_in, e) in row.iter_mut().enumerate() {
                *e = self.entries[2 * a_out + q_out][2 * a_in + q_in];
            }
        }
        b
    }
}

/// Build the R-matrix at spectral parameter `v`.
pub fn r_matrix<T: Scalar>(v: Complex<T>, eta: T) -> RMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let half = T::one() / (T::one() + T::one());
    let shift = ci(eta * half);
    let a = (v + shift).sin();
    let b = (v - shift).sin();
    let c = ci(eta.sinh());
    let entries = [
        [a, zero, zero, zero],
        [zero, b, c, zero],
        [zero, c, b, zero],
        [zero, zero, zero, a],
    ];
    RMatrix { v, eta, entries }
}

/// Embed a 4x4 two-space operator into three spaces (each of dimension 2,
/// labeled 1..=3 left to right) acting on spaces `(s0, s1)`.
fn embed3<T: Scalar>(r: &RMatrix<T>, s0: usize, s1: usize) -> [[Complex<T>; 8]; 8] {
    let zero = Complex::new(T::zero(), T::zero());
    let mut m = [[zero; 8]; 8];
    let w0 = 1usize << (3 - s0);
    let w1 = 1usize << (3 - s1);
    #[allow(clippy::needless_range_loop)]
    for i in 0..8usize {
        let i0 = (i / w0) % 2;
        let i1 = (i / w1) % 2;
        let rest = i - i0 * w0 - i1 * w1;
        for o0 in 0..2usize {
            for o1 in 0..2usize {
                let j = rest + o0 * w0 + o1 * w1;
                m[j][i] += r.entries[2 * o0 + o1][2 * i0 + i1];
            }
        }
    }
    m
}

fn mul8<T: Scalar>(a: &[[Complex<T>; 8]; 8], b: &[[Complex<T>; 8]; 8]) -> [[Complex<T>; 8]; 8] {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = [[zero; 8]; 8];
    for r in 0..8 {
        for k in 0..8 {
            let a_rk = a[r][k];
            if a_rk == zero {
                continue;
            }
            for c in 0..8 {
                out[r][c] += a_rk * b[k][c];
            }
        }
    }
    out
}

/// Max-norm residual of the shifted Yang–Baxter equation
/// `R_12(v1-v2+i eta/2) R_13(v1) R_23(v2)
///  = R_23(v2) R_13(v1) R_12(v1-v2+i eta/2)`.
pub fn check_yang_baxter<T: Scalar>(v1: Complex<T>, v2: Complex<T>, eta: T) -> T {
    let half = T::one() / (T::one() + T::one());
    let r12 = embed3(&r_matrix(v1 - v2 + ci(eta * half), eta), 1, 2);
    let r13 = embed3(&r_matrix(v1, eta), 1, 3);
    let r23 = embed3(&r_matrix(v2, eta), 2, 3);
    let lhs = mul8(&r12, &mul8(&r13, &r23));
    let rhs = mul8(&r23, &mul8(&r13, &r12));
    let mut worst = T::zero();
    for r in 0..8 {
        for c in 0..8 {
            let d = (lhs[r][c] - rhs[r][c]).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}
