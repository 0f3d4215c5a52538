//! Real scalar abstraction: the whole crate is generic over `f32`/`f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar underlying all states, operators and solvers.
///
/// Implemented by `f32` and `f64` through the blanket impl. Tolerances
/// quoted elsewhere in the crate assume `f64`; with `f32` everything
/// still runs but at correspondingly lower precision.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Sum
        + Default
        + Debug
        + Display
        + LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Convert an `f64` literal into the working scalar type.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must convert into the scalar type")
}

/// Real number as a complex one.
pub(crate) fn cr<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Purely imaginary number `ix`.
pub(crate) fn ci<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}
