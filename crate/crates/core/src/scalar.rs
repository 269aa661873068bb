//! Scalar traits shared by the exact linear algebra and the algebra oracle.
//!
//! Everything in this crate is exact: the ring and field types are integers,
//! rationals and Gaussian rationals. Floating point types deliberately do not
//! implement [`Field`], since rank and nullity are decided by exact zero tests.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::Num;

/// A commutative ring element usable as a matrix entry or an algebra coefficient.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> {
    /// Embeds a machine integer (used for ±1 structure constants and traces).
    fn from_i64(v: i64) -> Self;
}

/// A [`Scalar`] whose division is exact field division.
pub trait Field: Scalar {}

/// A [`Scalar`] that contains a square root of −1.
pub trait HasImaginaryUnit: Scalar {
    fn imaginary_unit() -> Self;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl<I> Scalar for Ratio<I>
where
    I: num_integer::Integer + Clone + Debug + Neg<Output = I> + From<i32> + TryFrom<i64>,
{
    fn from_i64(v: i64) -> Self {
        let i = I::try_from(v).unwrap_or_else(|_| panic!("{v} does not fit the integer type"));
        Ratio::from_integer(i)
    }
}

impl<I> Field for Ratio<I> where I: num_integer::Integer + Clone + Debug + Neg<Output = I> + From<i32> + TryFrom<i64> {}

impl<T: Scalar> Scalar for Complex<T> {
    fn from_i64(v: i64) -> Self {
        Complex::new(T::from_i64(v), T::zero())
    }
}

impl<T: Field> Field for Complex<T> {}

impl<T: Scalar> HasImaginaryUnit for Complex<T> {
    fn imaginary_unit() -> Self {
        Complex::new(T::zero(), T::one())
    }
}

/// Maps a Gaussian integer into any Gaussian scalar type.
pub fn lift_gaussian<T: Scalar>(z: &Complex<i64>) -> Complex<T> {
    Complex::new(T::from_i64(z.re), T::from_i64(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BigRational, GaussianRational, Rational};

    #[test]
    fn embeddings() {
        assert_eq!(Rational::from_i64(-3), Rational::from_integer(-3));
        assert_eq!(BigRational::from_i64(7), BigRational::from_integer(7.into()));
        let i = GaussianRational::imaginary_unit();
        assert_eq!(i * i, GaussianRational::from_i64(-1));
    }
}
