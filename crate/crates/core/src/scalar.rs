use std::fmt::Debug;

use num::{FromPrimitive, Num, Signed, ToPrimitive};

/// Number type for complete-information computations.
///
/// Implemented for `f64` and for exact [`crate::Rational`] values.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_usize(x: usize) -> Self {
        <Self as FromPrimitive>::from_usize(x).expect("usize is representable")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self > 0`. Unlike `Signed::is_positive`, false for `0.0` and `-0.0`.
    fn is_strictly_positive(&self) -> bool {
        *self > Self::zero()
    }

    /// `self < 0`. Unlike `Signed::is_negative`, false for `-0.0`.
    fn is_strictly_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + Clone
        + PartialOrd
        + Debug
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
