use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::rational::{self, Rational};

/// A point of the extended real line: a finite rational or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedPoint {
    Finite(Rational),
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(x: Rational) -> Self {
        ExtendedPoint::Finite(x)
    }

    pub fn int(v: i64) -> Self {
        ExtendedPoint::Finite(rational::int(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedPoint::Finite(x) => Some(x),
            ExtendedPoint::Infinity => None,
        }
    }

    /// `None` for the point at infinity.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_finite().map(rational::to_f64)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ExtendedPoint::Infinity),
            other => Ok(ExtendedPoint::Finite(rational::parse(other)?)),
        }
    }
}

impl From<Rational> for ExtendedPoint {
    fn from(x: Rational) -> Self {
        ExtendedPoint::Finite(x)
    }
}

impl Default for ExtendedPoint {
    fn default() -> Self {
        ExtendedPoint::Finite(Rational::zero())
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::Finite(x) => f.write_str(&rational::format(x)),
            ExtendedPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExtendedPoint::parse(&s).map_err(serde::de::Error::custom)
    }
}
