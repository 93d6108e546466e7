//! Helpers for exact rationals: string form `"3/2"`, parsing and serde glue.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

/// Renders `n/d`, or just `n` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_uint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Returns the value as a natural number when it is a positive integer.
pub fn as_positive_integer(q: &BigRational) -> Option<BigUint> {
    if q.is_integer() && q.is_positive() {
        q.numer().to_biguint()
    } else {
        None
    }
}

pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Text(String),
        Int(i64),
    }
    match Repr::deserialize(d)? {
        Repr::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
        Repr::Int(i) => Ok(BigRational::from_integer(i.into())),
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Serializes big naturals as JSON numbers while they fit in 64 bits and as
/// decimal strings beyond that.
pub mod natural {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(n) {
            Ok(v) => s.serialize_u64(v),
            Err(_) => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(BigUint::from(v)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }

    /// Wrapper used when a natural sits inside a collection.
    #[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
    pub struct Nat(#[serde(with = "self")] pub BigUint);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_and_parses() {
        assert_eq!(format_rational(&ratio(4, 6)), "2/3");
        assert_eq!(format_rational(&ratio(6, 3)), "2");
        assert_eq!(parse_rational(" 3 / 2 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-4").unwrap(), ratio(-4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn positive_integer_view() {
        assert_eq!(as_positive_integer(&ratio(6, 2)), Some(BigUint::from(3u8)));
        assert_eq!(as_positive_integer(&ratio(1, 2)), None);
        assert_eq!(as_positive_integer(&ratio(0, 1)), None);
    }
}
