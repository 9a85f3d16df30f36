//! Text grammar shared by [`super::ExpSum`] and [`super::NovElem`]:
//! `c1*t^(a1) + c2*t^(a2) - ... [+ O(t^(f))]`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, Rational};
use crate::error::{Error, Result};

pub(crate) struct ParsedSeries {
    pub terms: Vec<(Rational, Rational)>,
    pub floor: Option<Rational>,
}

pub(crate) fn render<C: Signed + std::fmt::Display + Clone>(
    terms: &[(C, Rational)],
    floor: Option<&Rational>,
    fmt_coeff: impl Fn(&C) -> String,
) -> String {
    let mut out = String::new();
    for (i, (c, a)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if a.is_zero() {
            out.push_str(&fmt_coeff(&mag));
        } else if mag.is_one() {
            out.push_str(&format!("t^({})", format_rational(a)));
        } else {
            out.push_str(&format!("{}*t^({})", fmt_coeff(&mag), format_rational(a)));
        }
    }
    match floor {
        Some(f) if out.is_empty() => format!("O(t^({}))", format_rational(f)),
        Some(f) => format!("{out} + O(t^({}))", format_rational(f)),
        None if out.is_empty() => "0".to_string(),
        None => out,
    }
}

pub(crate) fn parse(input: &str) -> Result<ParsedSeries> {
    let mut p = Parser {
        chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        input,
    };
    let mut out = ParsedSeries {
        terms: Vec::new(),
        floor: None,
    };
    if p.chars.is_empty() {
        return Err(p.error("empty expression"));
    }
    let mut first = true;
    while p.pos < p.chars.len() {
        let negative = match p.peek() {
            Some('+') => {
                p.pos += 1;
                false
            }
            Some('-') => {
                p.pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(p.error("expected '+' or '-' between terms")),
        };
        first = false;
        if p.peek() == Some('O') {
            if negative {
                return Err(p.error("error term cannot be negated"));
            }
            p.pos += 1;
            p.expect('(')?;
            let f = p.t_power()?;
            p.expect(')')?;
            if out.floor.replace(f).is_some() {
                return Err(p.error("more than one error term"));
            }
            continue;
        }
        let (c, a) = p.term()?;
        out.terms.push((if negative { -c } else { c }, a));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.input))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn term(&mut self) -> Result<(Rational, Rational)> {
        if self.peek() == Some('t') {
            return Ok((Rational::one(), self.t_power()?));
        }
        let c = self.unsigned_rational()?;
        if self.peek() == Some('*') {
            self.pos += 1;
            Ok((c, self.t_power()?))
        } else {
            Ok((c, Rational::zero()))
        }
    }

    fn t_power(&mut self) -> Result<Rational> {
        self.expect('t')?;
        if self.peek() != Some('^') {
            return Ok(Rational::one());
        }
        self.pos += 1;
        let parens = self.peek() == Some('(');
        if parens {
            self.pos += 1;
        }
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let a = self.unsigned_rational()?;
        if parens {
            self.expect(')')?;
        }
        Ok(if negative { -a } else { a })
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("bad integer"))
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let p = self.digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let q = self.digits()?;
            if q.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }
}
