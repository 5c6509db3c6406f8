//! Numeric abstraction shared by geometry, costs, models and oracles.
//!
//! Everything that carries a length or a cost is generic over [`Scalar`].
//! Integer and rational scalars compare exactly; floating-point scalars use a
//! relative tolerance.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num
    + Signed
    + Copy
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic on this type is exact.
    const EXACT: bool;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in scalar")
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits in scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Converts a value reported by a floating-point solver back into the
    /// scalar domain.
    fn from_solver(v: f64) -> Self;

    /// Exact rational image of the value.
    fn to_rational(self) -> BigRational;

    /// Equality under the scalar's comparison rule.
    fn same(self, other: Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let (a, b) = (self.to_f64_lossy(), other.to_f64_lossy());
            (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
        }
    }

    fn is_positive_finite(self) -> bool {
        self > Self::zero() && self.to_f64_lossy().is_finite()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for i64 {
    const EXACT: bool = true;

    fn from_solver(v: f64) -> Self {
        v.round() as i64
    }

    fn to_rational(self) -> BigRational {
        BigRational::from_integer(BigInt::from(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_solver(v: f64) -> Self {
        v
    }

    fn to_rational(self) -> BigRational {
        BigRational::from_float(self).unwrap_or_else(BigRational::zero)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_solver(v: f64) -> Self {
        v as f32
    }

    fn to_rational(self) -> BigRational {
        BigRational::from_float(self).unwrap_or_else(BigRational::zero)
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_solver(v: f64) -> Self {
        Ratio::approximate_float(v).unwrap_or_else(Ratio::zero)
    }

    fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}
