//! Scalar abstraction: the whole library is generic over the floating-point
//! type through [`Real`], with `f64` as the working precision.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable throughout the library (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Convert an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + std::fmt::Debug
        + std::fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Complex number over the library scalar.
pub type C<T> = Complex<T>;

/// `i` as a complex constant.
#[inline]
pub fn i<T: Real>() -> C<T> {
    C::new(T::zero(), T::one())
}

/// Real number lifted to a complex one.
#[inline]
pub fn re<T: Real>(x: T) -> C<T> {
    C::new(x, T::zero())
}
