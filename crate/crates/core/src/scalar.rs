//! Scalar traits shared by the exact and floating-point layers.
//!
//! The combinatorial core (lattices, words, trees, the affine image) runs over
//! exact scalars implementing [`Ring`] or [`Field`]. Kernel matrices and
//! hyperbolic distances run over any [`Real`] (`f32` or `f64`).

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// An exact commutative ring scalar: `BigInt`, `BigRational`, `i64`, ...
pub trait Ring: Num + Neg<Output = Self> + Clone + Debug + PartialEq {}

impl<T> Ring for T where T: Num + Neg<Output = T> + Clone + Debug + PartialEq {}

/// A ring in which every nonzero element is invertible.
///
/// `num_traits::Num` already supplies `Div`; this marker only records the
/// promise that division is exact.
pub trait Field: Ring {}

impl<T> Field for num_rational::Ratio<T> where
    T: Clone + num_integer::Integer + Debug + Neg<Output = T>
{
}

/// Floating-point scalar used for kernel values and eigenvalues.
pub trait Real:
    nalgebra::RealField + Copy + FromPrimitive + ToPrimitive + std::fmt::Display
{
    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 is representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
