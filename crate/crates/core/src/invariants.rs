//! Novikov numbers, Morse-Novikov inequalities, Euler numbers and the
//! H-space and parallel-form obstructions.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{HomologyOptions, HomologySummary, Regime};
use crate::error::{Error, Result};
use crate::linalg::ReductionStatus;
use crate::morse::{build_cochain, build_complex, loop_periods, nontrivial_loops, LocalSystem, MorseDatum};
use crate::rings::{format_rational, serde_rational, Rational};

fn class_text(c: &[Rational]) -> String {
    c.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// `b_k` and `q_k` of the Novikov complex of a class. In a stuck degree the
/// numbers are what the reduction saw, not certified values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NovikovNumbers {
    #[serde(with = "serde_rational::vec")]
    pub class: Vec<Rational>,
    pub degrees: Vec<usize>,
    pub b: Vec<usize>,
    pub q: Vec<usize>,
    pub status: Vec<ReductionStatus>,
}

impl NovikovNumbers {
    pub fn from_summary(class: &[Rational], h: &HomologySummary) -> Self {
        let m = h.degrees.len();
        NovikovNumbers {
            class: class.to_vec(),
            degrees: h.degrees.clone(),
            b: h.betti.clone(),
            q: h.torsion_counts(),
            status: h.status.clone().unwrap_or_else(|| vec![ReductionStatus::Complete; m]),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status.iter().all(|s| *s == ReductionStatus::Complete)
    }

    pub fn euler(&self) -> Result<i64> {
        if !self.is_complete() {
            return Err(Error::Indeterminate("a Novikov reduction did not finish".into()));
        }
        Ok(self.b.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum())
    }
}

pub fn novikov_numbers(d: &MorseDatum, class: &[Rational], opts: &HomologyOptions) -> Result<NovikovNumbers> {
    let h = build_complex(d, &LocalSystem::Nov(class.to_vec()))?.homology(opts)?;
    Ok(NovikovNumbers::from_summary(class, &h))
}

/// `slack_k = c_k - b_k - q_k - q_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityCheck {
    pub zeros: Vec<usize>,
    pub slack: Vec<i64>,
    pub pass: bool,
}

impl InequalityCheck {
    /// Degrees where the inequality fails.
    pub fn failures(&self) -> Vec<usize> {
        (0..self.slack.len()).filter(|&k| self.slack[k] < 0).collect()
    }
}

pub fn check_inequalities(zeros: &[usize], n: &NovikovNumbers) -> Result<InequalityCheck> {
    if zeros.len() != n.b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} zero counts for {} degrees",
            zeros.len(),
            n.b.len()
        )));
    }
    if let Some(k) = n.status.iter().position(|s| *s == ReductionStatus::Stuck) {
        return Err(Error::Indeterminate(format!("q_{k} is unknown: the reduction in degree {k} is stuck")));
    }
    let slack: Vec<i64> = (0..zeros.len())
        .map(|k| {
            let prev = if k > 0 { n.q[k - 1] } else { 0 };
            zeros[k] as i64 - (n.b[k] + n.q[k] + prev) as i64
        })
        .collect();
    let pass = slack.iter().all(|&s| s >= 0);
    Ok(InequalityCheck { zeros: zeros.to_vec(), slack, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObstructionKind {
    HSpace,
    ParallelForm,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionKind::HSpace => write!(f, "H-space"),
            ObstructionKind::ParallelForm => write!(f, "parallel form"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionVerdict {
    pub kind: ObstructionKind,
    pub triggered: bool,
    pub witness: String,
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let state = if self.triggered { "obstructed" } else { "no obstruction" };
        write!(f, "{}: {state}\n  {}", self.kind, self.witness)
    }
}

/// Degrees with a nonzero, certified homology group. With `free_only`
/// torsion is ignored, i.e. the group is read with real coefficients.
fn nonzero_degrees(h: &HomologySummary, free_only: bool) -> Vec<usize> {
    (0..h.degrees.len())
        .filter(|&k| {
            let done = h.status.as_ref().is_none_or(|s| s[k] == ReductionStatus::Complete);
            done && (h.betti[k] > 0 || (!free_only && !h.torsion[k].is_empty()))
        })
        .collect()
}

fn describe_groups(h: &HomologySummary, ks: &[usize]) -> String {
    let sym = match h.grading {
        crate::complex::Grading::Homology => "H_",
        crate::complex::Grading::Cohomology => "H^",
    };
    ks.iter().map(|&k| format!("{sym}{k} = {}", h.group(k))).collect::<Vec<_>>().join(", ")
}

/// Triggered when the system is detectably non-simple and the twisted
/// homology is nonzero in some degree. Integer systems (trivial, unit-rep)
/// are read over ℝ, so only Betti numbers count. Over Nov the loop used must have
/// holonomy `±t^γ` with `γ ≠ 0`: then `γ* ≠ id` and `t^γ - 1` is invertible.
pub fn hspace_obstruction(d: &MorseDatum, sys: &LocalSystem, opts: &HomologyOptions) -> Result<ObstructionVerdict> {
    let loops = nontrivial_loops(d, sys)?;
    let usable = match sys {
        LocalSystem::Nov(_) => loops.iter().find(|(_, t)| !t.exponent.is_zero()),
        _ => loops.first(),
    };
    let h = build_complex(d, sys)?.homology(opts)?;
    let over_reals = h.regime == Regime::Int;
    let nz = nonzero_degrees(&h, over_reals);
    let which = if over_reals { "real homology" } else { "homology" };
    let verdict = |triggered, witness| ObstructionVerdict { kind: ObstructionKind::HSpace, triggered, witness };
    Ok(match (usable, nz.is_empty()) {
        (Some((ev, _)), false) => verdict(
            true,
            format!("system {sys} is not simple ({ev}) and {}", describe_groups(&h, &nz)),
        ),
        (None, _) if !loops.is_empty() => verdict(
            false,
            format!(
                "system {sys} is not simple ({}), but no detected loop has holonomy t^γ with γ ≠ 0",
                loops[0].0
            ),
        ),
        (None, _) => verdict(false, format!("no detected loop has nontrivial holonomy under {sys}")),
        (Some((ev, _)), true) => verdict(
            false,
            format!("system {sys} is not simple ({ev}) but its {which} vanishes in every degree"),
        ),
    })
}

/// Triggered when the cohomology of `e^η` is nonzero in some degree.
pub fn parallel_form_obstruction(d: &MorseDatum, class: &[Rational]) -> Result<ObstructionVerdict> {
    if class.iter().all(Zero::is_zero) {
        return Err(Error::ZeroClass);
    }
    let sys = LocalSystem::Exp(class.to_vec());
    let c = build_cochain(d, &sys)?;
    let h = c.homology(&HomologyOptions::default())?;
    let nz = nonzero_degrees(&h, false);
    let mut witness = if nz.is_empty() {
        format!("cohomology of {sys} vanishes in every degree")
    } else {
        format!("class ({}) has {}", class_text(class), describe_groups(&h, &nz))
    };
    let chi = c.euler_cells();
    if chi != 0 {
        witness.push_str(&format!(
            "; Euler number {chi} ≠ 0 makes the cohomology nonzero for every nonzero class"
        ));
    }
    Ok(ObstructionVerdict { kind: ObstructionKind::ParallelForm, triggered: !nz.is_empty(), witness })
}

/// Rank of the period group of the class over the detected loops: 0 or 1.
pub fn rank_of_class(d: &MorseDatum, class: &[Rational]) -> Result<usize> {
    if class.len() != d.basis_forms.len() {
        return Err(Error::ClassLength { expected: d.basis_forms.len(), got: class.len() });
    }
    let nonzero = loop_periods(d)
        .iter()
        .any(|p| !p.iter().zip(class).map(|(a, b)| a * b).sum::<Rational>().is_zero());
    Ok(usize::from(nonzero))
}

/// Cell count and homology Euler numbers of one system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerNumbers {
    pub system: String,
    pub cells: i64,
    pub homology: i64,
}

pub fn euler_numbers(d: &MorseDatum, sys: &LocalSystem, opts: &HomologyOptions) -> Result<EulerNumbers> {
    let c = build_complex(d, sys)?;
    let h = c.homology(opts)?;
    Ok(EulerNumbers { system: sys.to_string(), cells: c.euler_cells(), homology: h.euler()? })
}

/// Novikov numbers with optional inequality slack and verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    #[serde(with = "serde_rational::vec")]
    pub class: Vec<Rational>,
    pub degrees: Vec<usize>,
    pub b: Vec<usize>,
    pub q: Vec<usize>,
    pub status: Vec<ReductionStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeros: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(default)]
    pub verdicts: Vec<ObstructionVerdict>,
}

impl InvariantReport {
    pub fn new(n: &NovikovNumbers, check: Option<&InequalityCheck>, verdicts: Vec<ObstructionVerdict>) -> Self {
        InvariantReport {
            class: n.class.clone(),
            degrees: n.degrees.clone(),
            b: n.b.clone(),
            q: n.q.clone(),
            status: n.status.clone(),
            zeros: check.map(|c| c.zeros.clone()),
            slack: check.map(|c| c.slack.clone()),
            pass: check.map(|c| c.pass),
            verdicts,
        }
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class ({})", class_text(&self.class))?;
        let wide = self.slack.is_some();
        write!(f, "k  b_k  q_k")?;
        if wide {
            write!(f, "  c_k  slack")?;
        }
        writeln!(f, "  status")?;
        for (i, k) in self.degrees.iter().enumerate() {
            write!(f, "{k:<2} {:<4} {:<4}", self.b[i], self.q[i])?;
            if let (Some(z), Some(s)) = (&self.zeros, &self.slack) {
                write!(f, " {:<4} {:<5}", z[i], s[i])?;
            }
            let st = match self.status[i] {
                ReductionStatus::Complete => "complete",
                ReductionStatus::Stuck => "stuck",
            };
            writeln!(f, " {st}")?;
        }
        if let Some(p) = self.pass {
            writeln!(f, "inequalities: {}", if p { "pass" } else { "FAIL" })?;
        }
        for v in &self.verdicts {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
