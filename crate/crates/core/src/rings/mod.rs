//! Exact coefficient rings.
//!
//! Three regimes are supported: the integers, the formal exponential group
//! ring `ℚ[t^ℚ]` ([`ExpSum`]) and the Novikov ring with rational exponents
//! ([`NovElem`]). Exponents are always exact rationals; periods that would be
//! multiples of π are stored after dividing by 2π.

mod expsum;
mod factors;
mod novikov;
mod text;

pub use expsum::ExpSum;
pub use factors::{serde_bigints, InvariantFactorList};
pub use novikov::NovElem;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Commutative ring with exactly decidable equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_unit(&self) -> bool;

    /// Replaces every transport `t^a` by its inverse `t^-a`.
    ///
    /// This is the identity on integers (whose only transports are `±1`).
    /// Returns `None` when the element is not a finite sum of transports.
    fn invert_transports(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn invert_transports(&self) -> Option<Self> {
        Some(self.clone())
    }
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int_rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q`. Decimal and floating-point forms are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let parse_int = |part: &str| -> Result<BigInt> {
        let part = part.trim();
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        part.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            if q.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(D::Error::custom)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Text(String),
        Int(i64),
        Float(f64),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> Result<Rational, String> {
            match self {
                RawRational::Text(s) => parse_rational(&s).map_err(|e| e.to_string()),
                RawRational::Int(n) => Ok(Rational::from_integer(n.into())),
                RawRational::Float(x) => Err(format!(
                    "period {x} is a floating-point value; write it as an exact \"p/q\" string"
                )),
            }
        }
    }

    pub mod vec {
        use super::super::{format_rational, Rational};
        use super::RawRational;
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<RawRational>::deserialize(d)?;
            raw.into_iter()
                .map(|r| r.into_rational().map_err(D::Error::custom))
                .collect()
        }
    }
}
