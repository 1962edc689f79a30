use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar the library is generic over.
///
/// `f32` and `f64` implement it; everything accuracy-critical in the test
/// suite is stated for `f64`, which the crate-root aliases fix.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Display + Debug + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`, panicking only if the scalar type
/// cannot represent ordinary literals (never for `f32`/`f64`).
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal must convert into the scalar type")
}

/// Converts a `usize` into `T` (rounded if the integer exceeds the mantissa).
pub(crate) fn uint<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize must convert into the scalar type")
}
