//! Canonical rational numbers.
//!
//! All scalars in the crate are `num_rational::BigRational`, which keeps the
//! fraction reduced with a positive denominator. This module adds the strict
//! canonical text form used by every file and JSON surface: `"p"` or `"p/q"`
//! with `gcd(|p|, q) = 1`, `q > 1`, no sign on zero and no leading zeros.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Canonical string: the `Display` form of a reduced `Ratio` already is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

fn parse_digits(s: &str, full: &str) -> Result<BigInt, ParseRationalError> {
    let err = |reason| ParseRationalError { input: full.to_string(), reason };
    if s.is_empty() {
        return Err(err("missing digits"));
    }
    if !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(err("leading zero"));
    }
    s.parse::<BigInt>().map_err(|_| err("unparseable integer"))
}

/// Parses only canonical strings; `parse(format(x)) == x` and
/// `format(parse(s)) == s` for every accepted `s`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError { input: s.to_string(), reason };
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num_str, den_str) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let mut numer = parse_digits(num_str, s)?;
    if negative {
        if numer.is_zero() {
            return Err(err("negative zero"));
        }
        numer = -numer;
    }
    let denom = match den_str {
        None => BigInt::one(),
        Some(d) => {
            let d = parse_digits(d, s)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            if d.is_one() {
                return Err(err("unit denominator"));
            }
            if numer.is_zero() {
                return Err(err("zero with denominator"));
            }
            if !numer.abs().gcd(&d).is_one() {
                return Err(err("fraction not reduced"));
            }
            d
        }
    };
    Ok(Rational::new_raw(numer, denom))
}

/// Accepts any `p` or `p/q` (signs allowed on either part, unreduced) and
/// reduces. Used for command-line slopes, where `14/8` is a reasonable thing
/// to type.
pub fn parse_rational_lenient(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError { input: s.to_string(), reason };
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| err("unparseable integer"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
    }
}

/// Smallest positive integer vector proportional to `v` (signs preserved).
/// Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(scaled.into_iter().map(|x| x / &g).collect())
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
