use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::Error;

/// A value in `Q ∪ {+∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(Rational),
    Infinity,
}

impl Val {
    pub fn finite(q: Rational) -> Self {
        Val::Finite(q)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Val::Finite(q) => Some(q),
            Val::Infinity => None,
        }
    }

    pub fn min_of<I: IntoIterator<Item = Val>>(it: I) -> Val {
        it.into_iter().fold(Val::Infinity, |a, b| a.min(b))
    }
}

impl From<Rational> for Val {
    fn from(q: Rational) -> Self {
        Val::Finite(q)
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinity, Val::Infinity) => Ordering::Equal,
            (Val::Infinity, Val::Finite(_)) => Ordering::Greater,
            (Val::Finite(_), Val::Infinity) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        &self + &rhs
    }
}

impl Add<&Val> for &Val {
    type Output = Val;
    fn add(self, rhs: &Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(q) => f.write_str(&format_rational(q)),
            Val::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Val {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" => Ok(Val::Infinity),
            other => parse_rational(other).map(Val::Finite),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Val {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
