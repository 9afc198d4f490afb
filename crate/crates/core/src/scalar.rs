//! Scalar abstraction for the polynomial engine.
//!
//! The coefficient recurrences and ladder maps are exact polynomial
//! identities, so they run unchanged over `f64` (fast path) and over
//! `BigRational` (bit-exact golden tests). Complex coefficients are needed
//! only for the Jacobi oracle of the `s²+1` case.

use num::{BigInt, BigRational};
use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

/// Field scalar the polynomial layer is generic over.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + num::Zero
    + num::One
    + Sub<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic in this scalar is exact.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// `a*b + c*d`, fused where the representation allows it.
    fn mul_add2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.clone() * b.clone() + c.clone() * d.clone()
    }
}

/// Scalars with a total order on the values we use (parameter validation,
/// spectral bounds). Complex coefficients are deliberately excluded.
pub trait RealScalar: Scalar + PartialOrd {}
impl<T: Scalar + PartialOrd> RealScalar for T {}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn mul_add2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.mul_add(*b, c * d)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

/// Rational from an integer pair, for test fixtures.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
