//! Exact scalar abstraction.
//!
//! Every algorithm in this crate is written against [`Scalar`], an ordered
//! field with exact arithmetic. The trait is implemented for
//! `num_rational::Ratio<I>` over any signed integer type, so the same code runs
//! on arbitrary precision rationals (`BigRational`) and on fixed width ones
//! (`Rational64`) when the inputs are known to stay small.
//!
//! Floating point types deliberately do not implement it: equality of
//! canonical forms is the ground truth for every check in the crate.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self;

    /// `p / q` in lowest terms; panics when `q == 0`.
    fn from_frac(p: i64, q: i64) -> Self {
        Self::from_int(p) / Self::from_int(q)
    }

    fn is_integer(&self) -> bool;

    /// Numerator of the reduced fraction, as an integer-valued scalar.
    fn numer_part(&self) -> Self;

    /// Denominator of the reduced fraction, as a positive integer-valued scalar.
    fn denom_part(&self) -> Self;

    /// Lossy conversion for diagnostics and bit-size estimates only.
    fn to_i64(&self) -> Option<i64>;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + Send + Sync + 'static,
    Ratio<I>: FromStr,
    I: num_traits::ToPrimitive,
{
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(I::from_i64(value).expect("integer out of range for scalar type"))
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn numer_part(&self) -> Self {
        Ratio::from_integer(self.numer().clone())
    }

    fn denom_part(&self) -> Self {
        Ratio::from_integer(self.denom().clone())
    }

    fn to_i64(&self) -> Option<i64> {
        if Ratio::is_integer(self) {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

/// Greatest common divisor of two integer-valued scalars (always nonnegative).
pub fn gcd<T: Scalar>(a: &T, b: &T) -> T {
    debug_assert!(a.is_integer() && b.is_integer());
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = x.clone() % y.clone();
        x = y;
        y = r;
    }
    x
}

/// Least common multiple of two integer-valued scalars (always nonnegative).
pub fn lcm<T: Scalar>(a: &T, b: &T) -> T {
    if a.is_zero() || b.is_zero() {
        return T::zero();
    }
    (a.clone() * b.clone()).abs() / gcd(a, b)
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        exp >>= 1;
    }
    acc
}
