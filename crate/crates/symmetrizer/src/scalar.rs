//! Scalar abstraction for the polynomial and matrix kernels.

use std::fmt;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Field scalar the kernels are generic over.
///
/// `Num` supplies the ring/field operations plus `Zero`/`One`;
/// `FromPrimitive` is used for small integer factors (derivative exponents,
/// multinomial coefficients). `BigRational` is the instantiation shipped as
/// [`crate::Q`]; the bounds are also satisfied by `f64`, but nothing in this
/// crate instantiates a floating-point kernel — exactness of ranks is the
/// whole point.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive
{
    /// Scalar from a small unsigned integer.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("small integer representable in scalar")
    }
}

impl<T> Scalar for T where
    T: Clone + fmt::Debug + fmt::Display + PartialEq + Num + Neg<Output = T> + FromPrimitive
{
}
