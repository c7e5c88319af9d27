//! Wire formats shared by the library types and the CLI.
//!
//! Multiplicities are written as JSON integers of arbitrary size; rationals
//! are always strings of the form `"p/q"`.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::partition::Partition;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigNat(pub BigUint);

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let num = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        num.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(serde_json::Number),
            Text(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Num(n) => n.to_string(),
            Raw::Text(t) => t,
        };
        BigUint::from_str(text.trim())
            .map(BigNat)
            .map_err(|_| serde::de::Error::custom(format!("multiplicity {text:?} is not a nonnegative integer")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TermWire {
    pub partition: Partition,
    pub mult: BigNat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ElementWire {
    pub n: usize,
    pub terms: Vec<TermWire>,
}

/// Serde adapter writing a rational as `"p/q"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        rational::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational::format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let text = Vec::<String>::deserialize(d)?;
        text.iter()
            .map(|t| rational::parse_rational(t))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}
