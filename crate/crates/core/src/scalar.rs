//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Polynomials are generic over a [`Coefficient`] ring; the floating
//! kernels (Jacobi polynomials, the angle-variable evaluator, numeric
//! evaluation of invariants) are generic over [`Real`].

use std::fmt::Debug;
use std::ops::{AddAssign, Neg, Sub};

use num_traits::{Float, FromPrimitive, One, ToPrimitive, Zero};

use crate::exactnum::Rational;

/// A commutative ring usable as a polynomial coefficient.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + FromPrimitive
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + for<'a> AddAssign<&'a Self>
        + FromPrimitive
{
}

/// Floating point: f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + AddAssign + Coefficient {}
impl Real for f32 {}
impl Real for f64 {}

/// Lossy (for floats) or exact (for rationals) conversion from a rational.
pub trait FromRational: Sized {
    fn from_rational(r: &Rational) -> Self;
}

impl FromRational for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl FromRational for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromRational for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

/// Convert a small exact constant into a float type.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite constant")
}
