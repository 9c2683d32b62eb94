//! Coefficient types.
//!
//! Every algebraic container in this crate is generic over a [`Scalar`]. The
//! exact [`Rational`] type is the one used by all verification code; `f64`
//! and `Rational64` are accepted for quick experiments, but only `Rational`
//! gives exact zero tests and overflow-free arithmetic.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

pub trait Scalar: Num + Neg<Output = Self> + Clone + fmt::Debug + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_integer(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    fn from_u128(value: u128) -> Self {
        if let Ok(small) = i64::try_from(value) {
            return Self::from_integer(small);
        }
        let base = Self::from_integer(1 << 32);
        let base = base.clone() * base;
        let hi = (value >> 64) as u64;
        let lo = value as u64;
        Self::from_u64(hi) * base + Self::from_u64(lo)
    }

    fn from_u64(value: u64) -> Self {
        match i64::try_from(value) {
            Ok(v) => Self::from_integer(v),
            Err(_) => Self::from_integer((value >> 1) as i64) * Self::from_integer(2) + Self::from_integer((value & 1) as i64),
        }
    }

    /// Coefficient rendering used by the canonical text form.
    fn to_text(&self) -> String;

    fn is_negative_coeff(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_integer(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_u128(value: u128) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
}

impl Scalar for Rational64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_text(&self) -> String {
        format!("{self}")
    }

    fn is_negative_coeff(&self) -> bool {
        *self < 0.0
    }
}

pub(crate) fn half<S: Scalar>() -> S {
    S::from_ratio(1, 2)
}

pub(crate) fn factorial(k: u32) -> u128 {
    (1..=k as u128).product::<u128>().max(1)
}

pub(crate) fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact integer as a [`Rational`].
pub fn int(v: i64) -> Rational {
    <Rational as Scalar>::from_integer(v)
}

/// Exact fraction `p/q` as a [`Rational`].
pub fn ratio(p: i64, q: i64) -> Rational {
    <Rational as Scalar>::from_ratio(p, q)
}
