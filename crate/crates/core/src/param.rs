//! The exponent `p` of an `l_p`-sum, with a distinguished infinite value.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PParam {
    Finite(f64),
    Infinite,
}

impl PParam {
    /// Accepts `p >= 1`; `f64::INFINITY` maps to [`PParam::Infinite`].
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(PParam::Infinite);
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("exponent p must satisfy p >= 1 (got {p})")));
        }
        Ok(PParam::Finite(p))
    }

    pub fn value(&self) -> f64 {
        match *self {
            PParam::Finite(p) => p,
            PParam::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PParam::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            PParam::Finite(p) => Some(p),
            PParam::Infinite => None,
        }
    }
}

impl fmt::Display for PParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PParam::Finite(p) => write!(f, "{p}"),
            PParam::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for PParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(PParam::Infinite),
            _ => {
                let v = if let Some((n, d)) = t.split_once('/') {
                    let n: f64 = n.trim().parse().map_err(|_| Error::Domain(format!("invalid p: {s}")))?;
                    let d: f64 = d.trim().parse().map_err(|_| Error::Domain(format!("invalid p: {s}")))?;
                    if d == 0.0 || !n.is_finite() || !d.is_finite() {
                        return Err(Error::Domain(format!("invalid p: {s}")));
                    }
                    n / d
                } else {
                    t.parse().map_err(|_| Error::Domain(format!("invalid p: {s}")))?
                };
                PParam::new(v)
            }
        }
    }
}

impl Serialize for PParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PParam::Finite(p) => serializer.serialize_f64(*p),
            PParam::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PVisitor;
        impl Visitor<'_> for PVisitor {
            type Value = PParam;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number >= 1 or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<PParam, E> {
                PParam::new(v).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<PParam, E> {
                self.visit_f64(v as f64)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<PParam, E> {
                self.visit_f64(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<PParam, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(PVisitor)
    }
}
