//! Serde adapters for exact numbers that may arrive as JSON numbers or strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{de, Deserialize, Deserializer, Serializer};

use crate::scalar::{format_rational, parse_rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Raw {
    fn text(self) -> String {
        match self {
            Raw::Int(v) => v.to_string(),
            // Display prints the shortest string that round-trips the f64.
            Raw::Float(v) => v.to_string(),
            Raw::Text(s) => s,
        }
    }
}

pub fn rational_from_any<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    parse_rational(&Raw::deserialize(d)?.text()).map_err(de::Error::custom)
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        rational_from_any(d)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<Raw>::deserialize(d)?
            .map(|r| parse_rational(&r.text()).map_err(de::Error::custom))
            .transpose()
    }
}

/// Integers that may exceed 64 bits: numbers when small, strings otherwise.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(v) {
            Ok(small) => s.serialize_i64(small),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BigInt::from(v)),
            Raw::Text(s) => s.trim().parse().map_err(de::Error::custom),
            Raw::Float(v) => Err(de::Error::custom(format!("expected an integer, got {v}"))),
        }
    }
}
