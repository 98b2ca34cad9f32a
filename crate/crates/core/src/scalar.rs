//! Floating-point scalar abstraction: `f32` or `f64`.

use num_traits::{Float, FloatConst, NumAssign};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftNum;
use std::fmt::Display;

/// Scalar type the numeric core is generic over.
///
/// `FftNum` already carries `FromPrimitive`, `Signed`, `Send`, `Sync` and
/// `'static`; the extra supertraits give transcendental functions, constants
/// and compound assignment. The one method that cannot be expressed as a
/// supertrait is drawing a standard normal variate.
pub trait Scalar: Float + FloatConst + NumAssign + FftNum + Display {
    /// Draw one standard normal variate from `rng`.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Scalar for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

/// Lossless-for-small-integers conversion used for grid arithmetic.
pub(crate) fn from_usize<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("grid size representable in the scalar type")
}

pub(crate) fn from_f64<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("constant representable in the scalar type")
}
