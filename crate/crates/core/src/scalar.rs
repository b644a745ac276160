//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating point type the library is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Tolerance floor: `max(x, k * eps)` so that tight f64 tolerances degrade
    /// gracefully for single precision.
    #[inline]
    fn tol(x: f64, k: f64) -> Self {
        Self::lit(x).max(Self::epsilon() * Self::lit(k))
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn quarter() -> Self {
        Self::lit(0.25)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub(crate) fn c<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn ci<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_two_pi<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let mut r = x % tau;
    if r < T::zero() {
        r = r + tau;
    }
    if r >= tau {
        r = r - tau;
    }
    r
}
