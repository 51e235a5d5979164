//! Exact rational, polynomial and matrix arithmetic, plus Smith normal form
//! generic over a discrete valuation ring.

pub mod context;
pub mod factor;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod ratfunmat;
pub mod smith;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar. Always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact commutative ring scalars usable as matrix entries.
pub trait Ring:
    Clone
    + PartialEq
    + std::fmt::Debug
    + num_traits::Zero
    + num_traits::One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + num_traits::Zero
        + num_traits::One
        + std::ops::Neg<Output = T>
        + std::ops::Sub<Output = T>
{
}

/// Rings with exact division by nonzero elements.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero; callers check `is_zero` first.
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!num_traits::Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}
