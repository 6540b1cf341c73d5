//! Exact scalars: rationals, quadratic extensions and symbolic coefficients.

mod expr;
mod quad;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use expr::{Bindings, CoeffExpr};
pub use quad::{GaussRational, QuadScalar, Sqrt3};

use crate::error::{Error, Result};

/// Arbitrary precision rational numbers, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// An exact field of characteristic zero.
///
/// All linear algebra in the crate is generic over this trait. Zero tests are
/// exact, so rank and kernel computations never depend on a tolerance.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Option<Self>;

    fn from_rational(r: &Rational) -> Self;

    /// The rational value, if the element lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * inv)
    }

    /// Sign of the element under the real embedding, when it has one.
    fn signum(&self) -> Option<i8>;

    fn to_json_value(&self) -> serde_json::Value;

    fn from_json_value(v: &serde_json::Value) -> Result<Self>;

    /// Describes the field in serialized documents.
    fn field_tag() -> serde_json::Value;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn signum(&self) -> Option<i8> {
        Some(if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        })
    }

    fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap_or_default())),
            _ => Err(Error::Schema(String::new(), "expected rational string".into())),
        }
    }

    fn field_tag() -> serde_json::Value {
        serde_json::json!({"kind": "rational"})
    }
}

/// Shorthand for `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}
