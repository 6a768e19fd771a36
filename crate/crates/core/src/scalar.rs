//! Scalar abstraction for the exact linear algebra core.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

/// Field scalar the core is generic over.
///
/// The toolkit instantiates this with [`Rat`] (arbitrary-precision
/// rationals), which is what every exactness guarantee in this crate is
/// stated for. The trait also holds for `f32`/`f64`, where the algorithms
/// run unchanged but pivoting and equality are subject to the usual
/// floating-point caveats.
pub trait Scalar:
    Num + Signed + Neg<Output = Self> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    /// Scalar with the integer value `p`.
    fn from_int(p: i64) -> Self;

    /// Scalar with the value `p / q`.
    ///
    /// Panics if `q == 0`.
    fn from_ratio(p: i64, q: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_int(p: i64) -> Self {
        BigRational::from_integer(BigInt::from(p))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }
}

impl Scalar for f64 {
    fn from_int(p: i64) -> Self {
        p as f64
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        p as f64 / q as f64
    }
}

impl Scalar for f32 {
    fn from_int(p: i64) -> Self {
        p as f32
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        p as f32 / q as f32
    }
}

/// Exact rational scalar used throughout the toolkit.
pub type Rat = BigRational;

/// The rational `p`.
pub fn rat(p: i64) -> Rat {
    Rat::from_int(p)
}

/// The rational `p / q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::from_ratio(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_construction_is_canonical() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-2, -4), ratio(1, 2));
        assert_eq!(ratio(3, -6), ratio(-1, 2));
        assert_eq!(rat(0), Rat::zero());
    }

    #[test]
    fn float_instantiation() {
        assert_eq!(f64::from_ratio(1, 2), 0.5);
        assert_eq!(f64::from_int(-3), -3.0);
    }
}
