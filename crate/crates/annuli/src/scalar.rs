//! Scalar abstraction for the numerical core.
//!
//! Everything downstream is written against [`Real`], a blanket alias over
//! the `num_traits` floating-point traits, so the whole solver stack works
//! for `f32` and `f64` alike. `f64` is the instantiation exercised by the
//! test and acceptance suites; tolerances are expressed as `f64` literals
//! and converted, which for `f32` simply saturates at its precision.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

/// Lift an `f64` constant into the working scalar type.
#[inline]
pub fn cst<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant not representable in scalar type")
}
