//! Exact rationals and the extended value `∞`.
//!
//! All arithmetic in the crate goes through [`Q`], an arbitrary precision
//! rational. [`ExtRational`] adds a top element used for the minimal exponent
//! of a smooth divisor.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn ceil_i64(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceiling fits in i64")
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let r = Q::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(r)
}

/// Smallest positive integer `m` such that `m * x` is an integer for all `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// A rational number or `∞`; `∞` is greater than every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Q),
    Infinite,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtRational::Finite(x) => Some(x),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn min_finite(&self, other: &Q) -> Q {
        match self {
            ExtRational::Finite(x) if x < other => x.clone(),
            _ => other.clone(),
        }
    }

    /// `self ≥ x` for a finite `x`.
    pub fn ge(&self, x: &Q) -> bool {
        match self {
            ExtRational::Finite(v) => v >= x,
            ExtRational::Infinite => true,
        }
    }

    /// `self > x` for a finite `x`.
    pub fn gt(&self, x: &Q) -> bool {
        match self {
            ExtRational::Finite(v) => v > x,
            ExtRational::Infinite => true,
        }
    }
}

impl From<Q> for ExtRational {
    fn from(x: Q) -> Self {
        ExtRational::Finite(x)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(x) => write!(f, "{x}"),
            ExtRational::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(ExtRational::Infinite),
            other => parse_q(other).map(ExtRational::Finite),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`Q`] as the string `"p/q"`.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative()
}

pub(crate) fn is_positive(x: &Q) -> bool {
    x.is_positive() && !x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_top() {
        let inf = ExtRational::Infinite;
        let big = ExtRational::Finite(qi(1_000_000));
        assert!(inf > big);
        assert!(inf.gt(&qi(7)));
        assert_eq!(inf.min_finite(&qi(1)), qi(1));
    }

    #[test]
    fn string_forms() {
        assert_eq!(q(10, 12).to_string(), "5/6");
        assert_eq!(q(4, 4).to_string(), "1");
        assert_eq!("inf".parse::<ExtRational>().unwrap(), ExtRational::Infinite);
        assert_eq!("-3/6".parse::<ExtRational>().unwrap(), ExtRational::Finite(q(-1, 2)));
        assert!("x/2".parse::<ExtRational>().is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_i64(&q(3, 2)), 1);
        assert_eq!(ceil_i64(&q(3, 2)), 2);
        assert_eq!(floor_i64(&q(-1, 2)), -1);
        assert_eq!(ceil_i64(&qi(2)), 2);
    }
}
