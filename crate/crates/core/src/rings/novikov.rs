use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::expsum::forward_owned_ops;
use super::{format_rational, text, Rational, Ring};
use crate::error::{Error, Result};

/// Element of the Novikov ring `Nov` with rational exponents: a formal series
/// `Σ n_γ t^γ` with integer coefficients and only finitely many terms above any
/// exponent.
///
/// A stored element is a finite list of terms, exponent descending. When
/// `floor` is set the element is known only above it: terms with exponent at
/// or below the floor are unknown, and all stored exponents lie strictly above
/// it. An element without a floor is an exact, finitely supported element.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NovElem {
    terms: Vec<(BigInt, Rational)>,
    floor: Option<Rational>,
}

impl NovElem {
    pub fn new<I>(raw: I, floor: Option<Rational>) -> Self
    where
        I: IntoIterator<Item = (BigInt, Rational)>,
    {
        let mut acc: BTreeMap<Rational, BigInt> = BTreeMap::new();
        for (c, a) in raw {
            if floor.as_ref().is_some_and(|f| &a <= f) {
                continue;
            }
            *acc.entry(a).or_insert_with(BigInt::zero) += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (c, a))
            .collect();
        NovElem { terms, floor }
    }

    pub fn exact<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, Rational)>,
    {
        Self::new(raw, None)
    }

    pub fn monomial(coeff: BigInt, exponent: Rational) -> Self {
        Self::exact([(coeff, exponent)])
    }

    pub fn t_pow(exponent: Rational) -> Self {
        Self::monomial(BigInt::one(), exponent)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, Rational::zero())
    }

    pub fn terms(&self) -> &[(BigInt, Rational)] {
        &self.terms
    }

    pub fn floor(&self) -> Option<&Rational> {
        self.floor.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Leading (largest-exponent) term.
    pub fn top(&self) -> Result<(BigInt, Rational)> {
        self.terms.first().cloned().ok_or(Error::ZeroElement)
    }

    /// An element is invertible iff its top coefficient is `±1`.
    pub fn is_unit(&self) -> bool {
        self.terms.first().is_some_and(|(c, _)| c.abs().is_one())
    }

    /// Truncated inverse: factors out the leading monomial and expands the
    /// geometric series, keeping `depth` below the top exponent of the result.
    ///
    /// The result `u` has floor `top(u) - depth`, and `self·u` agrees with `1`
    /// above `t^(-depth)`.
    pub fn invert(&self, depth: &Rational) -> Result<Self> {
        if !depth.is_positive() {
            return Err(Error::NonpositiveDepth(format_rational(depth)));
        }
        let (c, gamma) = match self.terms.first() {
            Some((c, g)) if c.abs().is_one() => (c.clone(), g.clone()),
            _ => return Err(Error::NotAUnit(self.to_string())),
        };
        // self = c·t^γ·(1 + r), every exponent of r negative
        let r: Vec<(BigInt, Rational)> = self.terms[1..]
            .iter()
            .map(|(ci, ai)| (ci * &c, ai - &gamma))
            .collect();
        let rel_floor = match &self.floor {
            Some(f) => std::cmp::max(-depth.clone(), f - &gamma),
            None => -depth.clone(),
        };
        let neg_r = NovElem::new(r.into_iter().map(|(ci, ai)| (-ci, ai)), Some(rel_floor.clone()));
        let mut sum = NovElem::new([(BigInt::one(), Rational::zero())], Some(rel_floor.clone()));
        let mut power = sum.clone();
        loop {
            power = NovElem::new(
                (&power * &neg_r).terms,
                Some(rel_floor.clone()),
            );
            if power.terms.is_empty() {
                break;
            }
            sum = &sum + &power;
        }
        let shift = -&gamma;
        Ok(NovElem::new(
            sum.terms.into_iter().map(|(ci, ai)| (ci * &c, ai + &shift)),
            Some(rel_floor + &shift),
        ))
    }

    /// Multiplies every exponent by `s > 0`.
    pub fn rescale(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::NonpositiveScale(format_rational(s)));
        }
        Ok(NovElem {
            terms: self.terms.iter().map(|(c, a)| (c.clone(), a * s)).collect(),
            floor: self.floor.as_ref().map(|f| f * s),
        })
    }

    /// `t ↦ t⁻¹` on an exact element. Truncated elements have no image in
    /// `Nov` and yield `None`.
    pub fn invert_exponents(&self) -> Option<Self> {
        if self.floor.is_some() {
            return None;
        }
        Some(NovElem::exact(
            self.terms.iter().map(|(c, a)| (c.clone(), -a)),
        ))
    }

    /// Greatest exponent that could carry a nonzero coefficient.
    fn upper_bound(&self) -> Option<Rational> {
        self.terms
            .first()
            .map(|(_, a)| a.clone())
            .or_else(|| self.floor.clone())
    }

    /// True iff every coefficient is divisible by the top coefficient, i.e.
    /// the element is `n·t^γ·unit` with `n` the top coefficient.
    pub fn is_monomial_times_unit(&self) -> bool {
        match self.terms.first() {
            Some((top, _)) => self
                .terms
                .iter()
                .all(|(c, _)| (c % top).is_zero()),
            None => false,
        }
    }

    /// Divides every coefficient by `n`; `None` unless all are divisible.
    pub fn div_integer(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() || self.terms.iter().any(|(c, _)| !(c % n).is_zero()) {
            return None;
        }
        Some(NovElem {
            terms: self.terms.iter().map(|(c, a)| (c / n, a.clone())).collect(),
            floor: self.floor.clone(),
        })
    }
}

fn max_floor(a: Option<&Rational>, b: Option<&Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(std::cmp::max(x, y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl Zero for NovElem {
    fn zero() -> Self {
        NovElem::default()
    }

    /// True only for the exact zero; a truncated element with no known terms
    /// is not known to be zero.
    fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.floor.is_none()
    }
}

impl One for NovElem {
    fn one() -> Self {
        NovElem::constant(BigInt::one())
    }
}

impl Ring for NovElem {
    fn is_unit(&self) -> bool {
        NovElem::is_unit(self)
    }

    fn invert_transports(&self) -> Option<Self> {
        self.invert_exponents()
    }
}

impl Add<&NovElem> for &NovElem {
    type Output = NovElem;

    fn add(self, rhs: &NovElem) -> NovElem {
        NovElem::new(
            self.terms.iter().chain(&rhs.terms).cloned(),
            max_floor(self.floor.as_ref(), rhs.floor.as_ref()),
        )
    }
}

impl Sub<&NovElem> for &NovElem {
    type Output = NovElem;

    fn sub(self, rhs: &NovElem) -> NovElem {
        self + &(-rhs)
    }
}

impl Mul<&NovElem> for &NovElem {
    type Output = NovElem;

    fn mul(self, rhs: &NovElem) -> NovElem {
        if self.is_zero() || rhs.is_zero() {
            return NovElem::zero();
        }
        // unknown tail of one factor times everything the other could carry
        let mut floor: Option<Rational> = None;
        if let (Some(f), Some(top)) = (&rhs.floor, self.upper_bound()) {
            floor = Some(f + top);
        }
        if let (Some(f), Some(top)) = (&self.floor, rhs.upper_bound()) {
            let cand = f + top;
            floor = Some(match floor {
                Some(old) => std::cmp::min(old, cand),
                None => cand,
            });
        }
        NovElem::new(
            self.terms.iter().flat_map(|(c1, a1)| {
                rhs.terms.iter().map(move |(c2, a2)| (c1 * c2, a1 + a2))
            }),
            floor,
        )
    }
}

impl Neg for &NovElem {
    type Output = NovElem;

    fn neg(self) -> NovElem {
        NovElem {
            terms: self.terms.iter().map(|(c, a)| (-c, a.clone())).collect(),
            floor: self.floor.clone(),
        }
    }
}

forward_owned_ops!(NovElem);

impl fmt::Display for NovElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(&self.terms, self.floor.as_ref(), |c: &BigInt| {
            c.to_string()
        }))
    }
}

impl FromStr for NovElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = text::parse(s)?;
        let terms = parsed
            .terms
            .into_iter()
            .map(|(c, a)| {
                if c.is_integer() {
                    Ok((c.to_integer(), a))
                } else {
                    Err(Error::Parse(format!(
                        "Novikov coefficients must be integers, got {} in {s:?}",
                        format_rational(&c)
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NovElem::new(terms, parsed.floor))
    }
}
