use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FlowLine, MorseDatum};
use crate::complex::{AnyComplex, ChainComplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rings::{format_rational, ExpSum, NovElem, Rational, Ring};

/// Rank-one coefficient systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalSystem {
    Trivial,
    /// Multiplication by each line's `unit_tag` on a ℤ fiber.
    UnitRep,
    /// The line bundle `e^η`, `η = Σ class_i · form_i`, over ℝ.
    Exp(Vec<Rational>),
    /// The Novikov system of the class.
    Nov(Vec<Rational>),
}

impl LocalSystem {
    pub fn class(&self) -> Option<&[Rational]> {
        match self {
            LocalSystem::Exp(c) | LocalSystem::Nov(c) => Some(c),
            _ => None,
        }
    }

    /// Checks the class length and, for unit representations, that every
    /// line is tagged.
    pub fn check(&self, d: &MorseDatum) -> Result<()> {
        if let Some(c) = self.class() {
            if c.len() != d.basis_forms.len() {
                return Err(Error::ClassLength {
                    expected: d.basis_forms.len(),
                    got: c.len(),
                });
            }
        }
        if *self == LocalSystem::UnitRep {
            if let Some(i) = d.flows.iter().position(|f| f.unit_tag.is_none()) {
                return Err(Error::MissingUnitTag(d.flow_label(i)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for LocalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = |c: &[Rational]| c.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match self {
            LocalSystem::Trivial => write!(f, "trivial"),
            LocalSystem::UnitRep => write!(f, "unit-rep"),
            LocalSystem::Exp(c) => write!(f, "exp({})", class(c)),
            LocalSystem::Nov(c) => write!(f, "nov({})", class(c)),
        }
    }
}

/// A transport `±t^a`: every weight in scope has this shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub sign: i8,
    pub exponent: Rational,
}

impl Transport {
    pub fn one() -> Self {
        Transport { sign: 1, exponent: Rational::zero() }
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.exponent.is_zero()
    }

    pub fn mul(&self, other: &Transport) -> Transport {
        Transport {
            sign: self.sign * other.sign,
            exponent: &self.exponent + &other.exponent,
        }
    }

    pub fn inv(&self) -> Transport {
        Transport { sign: self.sign, exponent: -&self.exponent }
    }

    fn coeff(&self) -> BigInt {
        BigInt::from(self.sign)
    }
}

fn dot(class: &[Rational], periods: &[Rational]) -> Rational {
    class.iter().zip(periods).map(|(a, b)| a * b).sum()
}

/// Transport of a flow line under a system: `1`, `unit_tag`, `t^{+a}` (EXP)
/// or `t^{-a}` (NOV) with `a = class · periods`.
pub fn transport(f: &FlowLine, sys: &LocalSystem) -> Result<Transport> {
    Ok(match sys {
        LocalSystem::Trivial => Transport::one(),
        LocalSystem::UnitRep => {
            let u = f
                .unit_tag
                .ok_or_else(|| Error::MissingUnitTag(format!("({} -> {})", f.from, f.to)))?;
            match u {
                1 => Transport::one(),
                -1 => Transport { sign: -1, exponent: Rational::zero() },
                _ => return Err(Error::NonUnit(u.to_string())),
            }
        }
        LocalSystem::Exp(c) => {
            check_len(c, f)?;
            Transport { sign: 1, exponent: dot(c, &f.periods) }
        }
        LocalSystem::Nov(c) => {
            check_len(c, f)?;
            Transport { sign: 1, exponent: -dot(c, &f.periods) }
        }
    })
}

fn check_len(c: &[Rational], f: &FlowLine) -> Result<()> {
    if c.len() != f.periods.len() {
        return Err(Error::ClassLength { expected: f.periods.len(), got: c.len() });
    }
    Ok(())
}

/// A ring element in the regime of some system.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Int(BigInt),
    Exp(ExpSum),
    Nov(NovElem),
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Int(x) => write!(f, "{x}"),
            Weight::Exp(x) => write!(f, "{x}"),
            Weight::Nov(x) => write!(f, "{x}"),
        }
    }
}

pub fn flow_weight(f: &FlowLine, sys: &LocalSystem) -> Result<Weight> {
    let t = transport(f, sys)?;
    Ok(match sys {
        LocalSystem::Trivial | LocalSystem::UnitRep => Weight::Int(t.coeff()),
        LocalSystem::Exp(_) => Weight::Exp(ExpSum::monomial(t.coeff().into(), t.exponent)),
        LocalSystem::Nov(_) => Weight::Nov(NovElem::monomial(t.coeff(), t.exponent)),
    })
}

fn assemble<R: Ring>(
    d: &MorseDatum,
    sys: &LocalSystem,
    ring: impl Fn(&Transport) -> R,
) -> Result<ChainComplex<R>> {
    let m = d.dimension;
    let gens: Vec<Vec<String>> = (0..=m)
        .map(|k| d.points_of_index(k).into_iter().map(String::from).collect())
        .collect();
    let pos = |k: usize, id: &str| gens[k].iter().position(|g| g == id);
    let mut bds: Vec<Matrix<R>> = (1..=m).map(|k| Matrix::zeros(gens[k - 1].len(), gens[k].len())).collect();
    for (i, f) in d.flows.iter().enumerate() {
        let k = d
            .point(&f.from)
            .ok_or_else(|| Error::InvalidDatum(format!("flow {} names an unknown point", d.flow_label(i))))?
            .index;
        let (Some(col), Some(row)) = (pos(k, &f.from), k.checked_sub(1).and_then(|j| pos(j, &f.to))) else {
            return Err(Error::InvalidDatum(format!("flow {} does not lower the index by one", d.flow_label(i))));
        };
        let w = ring(&transport(f, sys)?);
        let term = if f.sign < 0 { -w } else { w };
        let b = &mut bds[k - 1];
        b[(row, col)] = b[(row, col)].clone() + term;
    }
    ChainComplex::new(gens, bds)
}

/// Twisted Morse-Smale-Witten complex: the entry at (p, q) is the sum over
/// lines `q → p` of `sign · weight`.
pub fn build_complex(d: &MorseDatum, sys: &LocalSystem) -> Result<AnyComplex> {
    d.check()?;
    sys.check(d)?;
    Ok(match sys {
        LocalSystem::Trivial | LocalSystem::UnitRep => AnyComplex::Int(assemble(d, sys, Transport::coeff)?),
        LocalSystem::Exp(_) => AnyComplex::Exp(assemble(d, sys, |t| {
            ExpSum::monomial(t.coeff().into(), t.exponent.clone())
        })?),
        LocalSystem::Nov(_) => AnyComplex::Nov(assemble(d, sys, |t| NovElem::monomial(t.coeff(), t.exponent.clone()))?),
    })
}

pub fn build_cochain(d: &MorseDatum, sys: &LocalSystem) -> Result<AnyComplex> {
    build_complex(d, sys)?.dualize()
}
