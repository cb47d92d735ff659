//! Arbitrary-precision rationals.
//!
//! `Rational` is `num_rational::BigRational`, which is always stored reduced
//! with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fp::vp_int;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p^k` for any integer `k`.
pub fn p_power(p: u64, k: i64) -> Rational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp_rational(q: &Rational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(vp_int(q.numer(), p)? - vp_int(q.denom(), p)?)
}

/// Formats as `a` or `a/b`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Splits `q = u * p^k` with `u` a p-unit; `None` for zero.
pub fn split_p_part(q: &Rational, p: u64) -> Option<(Rational, i64)> {
    let k = vp_rational(q, p)?;
    Some((q * p_power(p, -k), k))
}

/// Canonical representative of `q` modulo `p^k Z_(p)`: the unique element of
/// `Z[1/p] ∩ [0, p^k)` congruent to `q`.
pub fn reduce_mod_p_power(q: &Rational, p: u64, k: i64) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let v = vp_rational(q, p).expect("nonzero");
    if v >= k {
        return Rational::zero();
    }
    // p-power part of the denominator
    let t = (-v).max(0);
    let scaled = q * p_power(p, t);
    let prec = (k + t) as usize;
    let modulus = num_traits::pow(BigInt::from(p), prec);
    // scaled is in Z_(p): numerator * denominator^{-1} mod p^prec
    let den_inv = mod_inverse(scaled.denom(), &modulus).expect("p-free denominator");
    let mut a = (scaled.numer() * den_inv) % &modulus;
    if a.is_negative() {
        a += &modulus;
    }
    Rational::from_integer(a) * p_power(p, -t)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = num_integer::Integer::extended_gcd(a, m);
    if !e.gcd.is_one() {
        return None;
    }
    let mut x = e.x % m;
    if x.is_negative() {
        x += m;
    }
    Some(x)
}

/// Serde adapter writing rationals as `"a/b"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for flat vectors of rationals.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for nested vectors of rationals.
pub mod serde_rational_rows {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let strs: Vec<Vec<String>> = Vec::deserialize(d)?;
        strs.iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}
