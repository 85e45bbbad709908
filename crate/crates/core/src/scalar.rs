//! Numeric types used for alphabetic sizes, weights and aggregate statistics.
//!
//! Alphabetic sizes of converted expressions grow exponentially with the
//! number of states, so every quantity derived from them is computed through
//! the [`Magnitude`] trait. The fixed-width integer implementations saturate
//! instead of wrapping; floating point and arbitrary-precision implementations
//! are exact up to their own precision.

use num_bigint::BigUint;
use num_traits::{Float, FromPrimitive, One, ToPrimitive, Zero};

/// A non-negative quantity that can hold an alphabetic size.
pub trait Magnitude: Clone + PartialOrd + Zero + One + ToPrimitive {
    /// `self + rhs`, saturating at the top of the representable range when there is one.
    fn plus(self, rhs: &Self) -> Self;

    /// `self * rhs`, saturating like [`Magnitude::plus`].
    fn times(self, rhs: &Self) -> Self;

    fn from_size(size: u128) -> Self;
}

macro_rules! impl_magnitude_int {
    ($($t:ty),*) => {$(
        impl Magnitude for $t {
            fn plus(self, rhs: &Self) -> Self {
                self.saturating_add(*rhs)
            }

            fn times(self, rhs: &Self) -> Self {
                self.saturating_mul(*rhs)
            }

            fn from_size(size: u128) -> Self {
                <$t>::try_from(size).unwrap_or(<$t>::MAX)
            }
        }
    )*};
}

macro_rules! impl_magnitude_float {
    ($($t:ty),*) => {$(
        impl Magnitude for $t {
            fn plus(self, rhs: &Self) -> Self {
                self + rhs
            }

            fn times(self, rhs: &Self) -> Self {
                self * rhs
            }

            fn from_size(size: u128) -> Self {
                size as $t
            }
        }
    )*};
}

impl_magnitude_int!(u32, u64, u128);
impl_magnitude_float!(f32, f64);

impl Magnitude for BigUint {
    fn plus(self, rhs: &Self) -> Self {
        self + rhs
    }

    fn times(self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_size(size: u128) -> Self {
        BigUint::from(size)
    }
}

/// Arithmetic mean of a sequence of sizes, `None` for an empty sequence.
pub fn mean<F, I>(values: I) -> Option<F>
where
    F: Float + FromPrimitive,
    I: IntoIterator,
    I::Item: ToPrimitive,
{
    let mut total = F::zero();
    let mut count = 0usize;
    for v in values {
        total = total + F::from(v).unwrap_or_else(F::infinity);
        count += 1;
    }
    if count == 0 {
        None
    } else {
        Some(total / F::from_usize(count)?)
    }
}

/// Ratio of two means, `None` when the denominator is zero or missing.
pub fn ratio<F: Float>(numerator: Option<F>, denominator: Option<F>) -> Option<F> {
    match (numerator, denominator) {
        (Some(n), Some(d)) if !d.is_zero() => Some(n / d),
        _ => None,
    }
}
