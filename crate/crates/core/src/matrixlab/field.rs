//! Exact scalars over ℚ and prime fields.

use crate::exact::format_rational;
use crate::supernat::primes::is_prime;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactField {
    Rationals,
    /// `GF(p)`; construct through [`ExactField::prime`].
    Prime(u64),
}

impl ExactField {
    pub fn prime(p: u64) -> Option<Self> {
        is_prime(p).then_some(Self::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Self::Rationals => 0,
            Self::Prime(p) => *p,
        }
    }

    /// `GF(p)` for a prime characteristic, ℚ for 0.
    pub fn with_characteristic(p: u64) -> Option<Self> {
        if p == 0 {
            Some(Self::Rationals)
        } else {
            Self::prime(p)
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Self::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            Self::Prime(p) => Scalar::Residue { value: (v as i128).rem_euclid(p as i128) as u64, modulus: p },
        }
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rationals => write!(f, "Q"),
            Self::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of an [`ExactField`]. Mixing fields in one operation is a bug
/// and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Rational(q) => q.is_zero(),
            Self::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Self::Rational(q) => q.is_one(),
            Self::Residue { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> ExactField {
        match self {
            Self::Rational(_) => ExactField::Rationals,
            Self::Residue { modulus, .. } => ExactField::Prime(*modulus),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => Self::Rational(a + b),
            (Self::Residue { value: a, modulus: p }, Self::Residue { value: b, modulus: q }) if p == q => {
                Self::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Rational(a) => Self::Rational(-a),
            Self::Residue { value, modulus } => {
                Self::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => Self::Rational(a * b),
            (Self::Residue { value: a, modulus: p }, Self::Residue { value: b, modulus: q }) if p == q => {
                Self::Residue { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Self::Rational(a) => Self::Rational(a.recip()),
            Self::Residue { value, modulus } => {
                Self::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    /// Text form: `"3/2"` over ℚ, the residue over `GF(p)`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::Rational(q) => serde_json::Value::String(format_rational(q)),
            Self::Residue { value, .. } => serde_json::Value::from(*value),
        }
    }

    /// Small signed integer value, when the scalar is one over ℚ or read as
    /// a symmetric residue over `GF(p)`.
    pub fn as_small_int(&self) -> Option<i64> {
        match self {
            Self::Rational(q) if q.is_integer() => {
                let n: &BigInt = q.numer();
                if n.abs() <= BigInt::from(i64::MAX) {
                    n.to_string().parse().ok()
                } else {
                    None
                }
            }
            Self::Rational(_) => None,
            Self::Residue { value, modulus } => {
                Some(if *value > modulus / 2 { *value as i64 - *modulus as i64 } else { *value as i64 })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(q) => write!(f, "{}", format_rational(q)),
            Self::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = ExactField::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(-2);
        assert_eq!(b, f.from_i64(5));
        assert_eq!(a.mul(&b), f.from_i64(1));
        assert_eq!(a.inv().unwrap(), f.from_i64(5));
        assert_eq!(a.add(&a.neg()), f.zero());
        assert!(ExactField::prime(8).is_none());
        assert_eq!(f.from_i64(6).as_small_int(), Some(-1));
    }

    #[test]
    fn rational_arithmetic() {
        let f = ExactField::Rationals;
        let half = f.from_i64(2).inv().unwrap();
        assert_eq!(half.to_json(), serde_json::json!("1/2"));
        assert!(half.mul(&f.from_i64(2)).is_one());
        assert_eq!(f.zero().inv(), None);
    }

    #[test]
    fn characteristic_two() {
        let f = ExactField::prime(2).unwrap();
        assert_eq!(f.from_i64(-1), f.one());
        assert_eq!(f.characteristic(), 2);
    }
}
