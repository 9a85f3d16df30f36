use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{text, Rational, Ring};
use crate::error::{Error, Result};

/// Finite formal sum `Σ cᵢ·t^{aᵢ}` with rational coefficients and rational
/// exponents: an element of the group ring `ℚ[ℚ]`.
///
/// Terms are kept with distinct exponents, nonzero coefficients, sorted by
/// exponent descending. The empty sum is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExpSum {
    terms: Vec<(Rational, Rational)>,
}

impl ExpSum {
    /// Merges equal exponents, drops zero coefficients and sorts descending.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (c, a) in raw {
            *acc.entry(a).or_insert_with(Rational::zero) += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (c, a))
            .collect();
        ExpSum { terms }
    }

    pub fn monomial(coeff: Rational, exponent: Rational) -> Self {
        Self::normalize([(coeff, exponent)])
    }

    /// `t^a`.
    pub fn t_pow(exponent: Rational) -> Self {
        Self::monomial(Rational::one(), exponent)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `(coefficient, exponent)` pairs, exponent descending.
    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Rational, Rational)> {
        self.terms.first()
    }

    pub fn trailing(&self) -> Option<&(Rational, Rational)> {
        self.terms.last()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, a)| a.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiplies every exponent by `s > 0`.
    pub fn rescale(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::NonpositiveScale(super::format_rational(s)));
        }
        Ok(ExpSum {
            terms: self.terms.iter().map(|(c, a)| (c.clone(), a * s)).collect(),
        })
    }

    /// The automorphism `t ↦ t⁻¹`.
    pub fn invert_exponents(&self) -> Self {
        ExpSum {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(c, a)| (c.clone(), -a))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division does not
    /// leave a finite sum.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dc, da) = divisor.leading()?.clone();
        let (_, d_low) = divisor.trailing()?.clone();
        if self.is_zero() {
            return Some(ExpSum::zero());
        }
        // Any finite quotient has its lowest exponent at self.low - divisor.low.
        let q_low = &self.trailing()?.1 - &d_low;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((rc, ra)) = rem.leading().cloned() {
            let qa = &ra - &da;
            if qa < q_low {
                return None;
            }
            let qc = rc / &dc;
            rem = rem - divisor * &ExpSum::monomial(qc.clone(), qa.clone());
            quotient.push((qc, qa));
        }
        Some(ExpSum::normalize(quotient))
    }

    /// Evaluates at a real base `t = base`. Diagnostic only: rank decisions
    /// never go through floating point.
    pub fn evaluate(&self, base: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, a)| c.to_f64().unwrap_or(f64::NAN) * base.powf(a.to_f64().unwrap_or(f64::NAN)))
            .sum()
    }
}

impl Zero for ExpSum {
    fn zero() -> Self {
        ExpSum::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExpSum {
    fn one() -> Self {
        ExpSum::constant(Rational::one())
    }
}

impl Ring for ExpSum {
    /// Units of `ℚ[ℚ]` are the nonzero monomials.
    fn is_unit(&self) -> bool {
        self.is_monomial()
    }

    fn invert_transports(&self) -> Option<Self> {
        Some(self.invert_exponents())
    }
}

impl Add<&ExpSum> for &ExpSum {
    type Output = ExpSum;

    fn add(self, rhs: &ExpSum) -> ExpSum {
        ExpSum::normalize(self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Sub<&ExpSum> for &ExpSum {
    type Output = ExpSum;

    fn sub(self, rhs: &ExpSum) -> ExpSum {
        ExpSum::normalize(
            self.terms
                .iter()
                .cloned()
                .chain(rhs.terms.iter().map(|(c, a)| (-c, a.clone()))),
        )
    }
}

impl Mul<&ExpSum> for &ExpSum {
    type Output = ExpSum;

    fn mul(self, rhs: &ExpSum) -> ExpSum {
        ExpSum::normalize(self.terms.iter().flat_map(|(c1, a1)| {
            rhs.terms.iter().map(move |(c2, a2)| (c1 * c2, a1 + a2))
        }))
    }
}

impl Neg for &ExpSum {
    type Output = ExpSum;

    fn neg(self) -> ExpSum {
        ExpSum {
            terms: self.terms.iter().map(|(c, a)| (-c, a.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_ops {
    ($ty:ty) => {
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl std::ops::Sub<&$ty> for $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                &self - rhs
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;

forward_owned_ops!(ExpSum);

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(&self.terms, None, super::format_rational))
    }
}

impl FromStr for ExpSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = text::parse(s)?;
        if parsed.floor.is_some() {
            return Err(Error::Parse(format!(
                "exponential sums are exact; no error term allowed in {s:?}"
            )));
        }
        Ok(ExpSum::normalize(parsed.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{int_rat, rat};
    use proptest::prelude::*;

    fn es(s: &str) -> ExpSum {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_cancels_and_merges() {
        let zero = ExpSum::normalize([(int_rat(1), rat(1, 2)), (int_rat(-1), rat(1, 2))]);
        assert!(zero.is_zero());

        let circle = ExpSum::normalize([(int_rat(1), rat(-1, 2)), (int_rat(-1), rat(1, 2))]);
        assert_eq!(circle.to_string(), "-t^(1/2) + t^(-1/2)");
        assert_eq!(circle, es("t^(-1/2) - t^(1/2)"));

        let merged = ExpSum::normalize([
            (int_rat(2), int_rat(0)),
            (int_rat(3), int_rat(0)),
            (int_rat(1), int_rat(1)),
        ]);
        assert_eq!(merged, es("t + 5"));
        assert_eq!(merged.terms()[0], (int_rat(1), int_rat(1)));
    }

    #[test]
    fn products() {
        assert_eq!(es("t^(1/2)") * es("t^(-1/2)"), ExpSum::one());
        assert_eq!(es("t - 1") * es("t + 1"), es("t^2 - 1"));
        for a in [rat(3, 7), rat(-5, 2), int_rat(0)] {
            let lhs = &(&ExpSum::t_pow(a.clone()) - &ExpSum::t_pow(&a + int_rat(1)))
                * &ExpSum::t_pow(-a);
            assert_eq!(lhs, es("1 - t"));
        }
    }

    #[test]
    fn rescale() {
        assert_eq!(es("t - t^(-1)").rescale(&int_rat(2)).unwrap(), es("t^2 - t^(-2)"));
        assert!(ExpSum::zero().rescale(&rat(1, 3)).unwrap().is_zero());
        assert!(matches!(
            es("t").rescale(&int_rat(0)),
            Err(Error::NonpositiveScale(_))
        ));
    }

    #[test]
    fn exact_division() {
        let a = es("t^(1/2) - t^(-1/2)");
        let b = es("3*t^2 + t^(1/3) - 2");
        assert_eq!((&a * &b).div_exact(&a), Some(b.clone()));
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(es("1").div_exact(&es("1 - t")), None);
        assert_eq!(ExpSum::zero().div_exact(&a), Some(ExpSum::zero()));
        assert_eq!(a.div_exact(&ExpSum::zero()), None);
    }

    #[test]
    fn parse_and_render() {
        for s in ["0", "5", "-t^(1/2) + t^(-1/2)", "3/2*t^(2) - 7"] {
            assert_eq!(es(s).to_string(), s);
        }
        assert_eq!(es("1*t^(1) + 0"), es("t"));
        assert!("t^(1/2) + O(t^(-3))".parse::<ExpSum>().is_err());
        assert!("t t".parse::<ExpSum>().is_err());
    }

    #[test]
    fn evaluation_is_diagnostic() {
        let v = es("t^(-1/2) - t^(1/2)").evaluate(std::f64::consts::E.powf(2.0 * std::f64::consts::PI));
        let expected = (-std::f64::consts::PI).exp() - std::f64::consts::PI.exp();
        assert!((v - expected).abs() < 1e-9);
    }

    fn arb_expsum() -> impl Strategy<Value = ExpSum> {
        prop::collection::vec((-4i64..=4, -6i64..=6, 1i64..=3), 0..4).prop_map(|v| {
            ExpSum::normalize(v.into_iter().map(|(c, p, q)| (int_rat(c), rat(p, q))))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_expsum(), b in arb_expsum(), c in arb_expsum()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &ExpSum::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn rescale_is_a_homomorphism(a in arb_expsum(), b in arb_expsum(), p in 1i64..6, q in 1i64..6) {
            let s = rat(p, q);
            prop_assert_eq!(
                (&a * &b).rescale(&s).unwrap(),
                &a.rescale(&s).unwrap() * &b.rescale(&s).unwrap()
            );
        }

        #[test]
        fn text_round_trip(a in arb_expsum()) {
            prop_assert_eq!(a.to_string().parse::<ExpSum>().unwrap(), a);
        }
    }
}
