//! Graded chain complexes over the three coefficient regimes.
//!
//! A cochain complex is stored as a chain complex with the grading flipped
//! (chain degree `m - k` holds cochain degree `k`), so one homology engine
//! serves both; reports are always indexed by the natural degree.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    nov_reduce, rank_expsum, snf_int, Matrix, ReductionStatus, DEFAULT_DEPTH, DEFAULT_MAX_ITER,
};
use crate::rings::{int_rat, serde_bigints, ExpSum, NovElem, Rational, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Regime {
    Int,
    Expsum,
    Nov,
}

impl Regime {
    /// Label of the coefficient module in text output.
    pub fn label(self) -> &'static str {
        match self {
            Regime::Int => "Z",
            Regime::Expsum => "R",
            Regime::Nov => "Nov",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Homology,
    Cohomology,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<R> {
    generators: Vec<Vec<String>>,
    /// `boundaries[k - 1]` is `∂_k`, rows = degree `k-1`, cols = degree `k`.
    boundaries: Vec<Matrix<R>>,
    grading: Grading,
}

/// First composite `∂_k ∘ ∂_{k+1}` entry that is not zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// `k` for chain complexes; for cochain complexes the degree `k` of the
    /// composite `δ_{k+1} ∘ δ_k`.
    pub degree: usize,
    pub row: String,
    pub col: String,
    pub entry: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "boundary squared is nonzero at degree {}: entry ({}, {}) = {}",
            self.degree, self.row, self.col, self.entry
        )
    }
}

impl<R: Ring> ChainComplex<R> {
    /// `generators[k]` lists degree-`k` generators for `k = 0..=m`;
    /// `boundaries` holds `∂_1..∂_m`.
    pub fn new(generators: Vec<Vec<String>>, boundaries: Vec<Matrix<R>>) -> Result<Self> {
        Self::with_grading(generators, boundaries, Grading::Homology)
    }

    fn with_grading(
        generators: Vec<Vec<String>>,
        boundaries: Vec<Matrix<R>>,
        grading: Grading,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::DimensionMismatch("a complex needs degree 0".into()));
        }
        if boundaries.len() + 1 != generators.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} boundary maps for {} degrees",
                boundaries.len(),
                generators.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let (lo, hi) = (generators[i].len(), generators[i + 1].len());
            if b.rows() != lo || b.cols() != hi {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {} is {}x{}, expected {lo}x{hi}",
                    i + 1,
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(ChainComplex { generators, boundaries, grading })
    }

    pub fn dimension(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Generators in storage degree `j`.
    pub fn generators(&self, j: usize) -> &[String] {
        &self.generators[j]
    }

    /// Storage boundary `∂_j`, `j = 1..=m`.
    pub fn boundary(&self, j: usize) -> &Matrix<R> {
        &self.boundaries[j - 1]
    }

    /// Natural degree held in storage degree `j`.
    pub fn natural_degree(&self, j: usize) -> usize {
        match self.grading {
            Grading::Homology => j,
            Grading::Cohomology => self.dimension() - j,
        }
    }

    fn storage_degree(&self, k: usize) -> usize {
        self.natural_degree(k)
    }

    /// Generators in natural degree `k`.
    pub fn generators_in(&self, k: usize) -> &[String] {
        &self.generators[self.storage_degree(k)]
    }

    /// The differential leaving natural degree `k`: `∂_k` for chains, `δ_k`
    /// for cochains. `None` when it would leave the complex.
    pub fn differential_from(&self, k: usize) -> Option<&Matrix<R>> {
        let m = self.dimension();
        match self.grading {
            Grading::Homology => (k >= 1 && k <= m).then(|| self.boundary(k)),
            Grading::Cohomology => (k < m).then(|| self.boundary(m - k)),
        }
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for j in 1..self.boundaries.len() {
            let comp = self.boundaries[j - 1]
                .mul(&self.boundaries[j])
                .expect("shapes checked at construction");
            let bad = comp
                .entries()
                .find(|(_, _, x)| !x.is_zero())
                .map(|(r, c, x)| (r, c, x.to_string()));
            if let Some((r, c, entry)) = bad {
                let degree = match self.grading {
                    Grading::Homology => j,
                    Grading::Cohomology => self.dimension() - j - 1,
                };
                return Err(Violation {
                    degree,
                    row: self.generators[j - 1][r].clone(),
                    col: self.generators[j + 1][c].clone(),
                    entry,
                });
            }
        }
        Ok(())
    }

    /// Cochain complex: `δ_k` is the transpose of `∂_{k+1}` with every
    /// transport replaced by its inverse. Signs are unchanged.
    pub fn dualize(&self) -> Result<Self> {
        let m = self.dimension();
        let generators: Vec<Vec<String>> = (0..=m).rev().map(|k| self.generators[k].clone()).collect();
        let mut boundaries = Vec::with_capacity(m);
        for j in 1..=m {
            let src = self.boundary(m - j + 1);
            let t = src.transpose().try_map(|x| {
                x.invert_transports()
                    .ok_or_else(|| Error::NonInvertibleEntry(x.to_string()))
            })?;
            boundaries.push(t);
        }
        let grading = match self.grading {
            Grading::Homology => Grading::Cohomology,
            Grading::Cohomology => Grading::Homology,
        };
        Self::with_grading(generators, boundaries, grading)
    }

    /// `Σ (-1)^k · #generators in degree k`.
    pub fn euler_cells(&self) -> i64 {
        (0..=self.dimension())
            .map(|k| sign(k) * self.generators_in(k).len() as i64)
            .sum()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ChainComplex<S> {
        ChainComplex {
            generators: self.generators.clone(),
            boundaries: self.boundaries.iter().map(|b| b.map(&f)).collect(),
            grading: self.grading,
        }
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A complex in one of the three regimes.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyComplex {
    Int(ChainComplex<BigInt>),
    Exp(ChainComplex<ExpSum>),
    Nov(ChainComplex<NovElem>),
}

macro_rules! each {
    ($self:expr, $c:ident => $body:expr) => {
        match $self {
            AnyComplex::Int($c) => $body,
            AnyComplex::Exp($c) => $body,
            AnyComplex::Nov($c) => $body,
        }
    };
}

impl AnyComplex {
    pub fn regime(&self) -> Regime {
        match self {
            AnyComplex::Int(_) => Regime::Int,
            AnyComplex::Exp(_) => Regime::Expsum,
            AnyComplex::Nov(_) => Regime::Nov,
        }
    }

    pub fn dimension(&self) -> usize {
        each!(self, c => c.dimension())
    }

    pub fn grading(&self) -> Grading {
        each!(self, c => c.grading())
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        each!(self, c => c.validate())
    }

    pub fn dualize(&self) -> Result<Self> {
        Ok(match self {
            AnyComplex::Int(c) => AnyComplex::Int(c.dualize()?),
            AnyComplex::Exp(c) => AnyComplex::Exp(c.dualize()?),
            AnyComplex::Nov(c) => AnyComplex::Nov(c.dualize()?),
        })
    }

    pub fn euler_cells(&self) -> i64 {
        each!(self, c => c.euler_cells())
    }

    pub fn generators_in(&self, k: usize) -> &[String] {
        each!(self, c => c.generators_in(k))
    }

    /// Text dump of the differentials, natural degrees ascending.
    pub fn describe(&self) -> String {
        each!(self, c => describe(c))
    }

    pub fn homology(&self, opts: &HomologyOptions) -> Result<HomologySummary> {
        match self {
            AnyComplex::Int(c) => homology_int(c),
            AnyComplex::Exp(c) => homology_exp(c),
            AnyComplex::Nov(c) => homology_nov(c, opts),
        }
    }
}

fn describe<R: Ring>(c: &ChainComplex<R>) -> String {
    let mut out = String::new();
    let (name, arrow) = match c.grading() {
        Grading::Homology => ("d", -1i64),
        Grading::Cohomology => ("delta", 1),
    };
    for k in 0..=c.dimension() {
        out.push_str(&format!("C_{k}: {}\n", c.generators_in(k).join(" ")));
    }
    for k in 0..=c.dimension() {
        if let Some(d) = c.differential_from(k) {
            let target = k as i64 + arrow;
            out.push_str(&format!("{name}_{k}: C_{k} -> C_{target}\n{d}\n"));
        }
    }
    out
}

/// Parameters for Novikov-ring reductions.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyOptions {
    pub depth: Rational,
    pub max_iter: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            depth: int_rat(DEFAULT_DEPTH),
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Per-degree ranks and torsion, indexed by natural degree.
///
/// `torsion[k]` holds the invariant factors `> 1` (over ℤ) or the cyclic
/// invariants `n` of summands `Nov/nNov` (over Nov); it is empty over ℝ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologySummary {
    pub regime: Regime,
    pub grading: Grading,
    pub degrees: Vec<usize>,
    pub betti: Vec<usize>,
    #[serde(with = "serde_bigints::nested")]
    pub torsion: Vec<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Vec<ReductionStatus>>,
}

impl HomologySummary {
    /// `q_k`: number of cyclic torsion summands.
    pub fn torsion_counts(&self) -> Vec<usize> {
        self.torsion.iter().map(Vec::len).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.status
            .as_ref()
            .is_none_or(|s| s.iter().all(|x| *x == ReductionStatus::Complete))
    }

    /// True iff some degree carries a free or torsion summand.
    pub fn is_nonzero(&self) -> bool {
        self.betti.iter().any(|&b| b > 0) || self.torsion.iter().any(|t| !t.is_empty())
    }

    pub fn euler(&self) -> Result<i64> {
        if !self.is_complete() {
            return Err(Error::Indeterminate(
                "a Novikov reduction did not finish; Betti numbers are not certain".into(),
            ));
        }
        Ok(self.betti.iter().enumerate().map(|(k, &b)| sign(k) * b as i64).sum())
    }

    /// Text form of degree `k`, e.g. `Z^2 ⊕ Z/2`.
    pub fn group(&self, k: usize) -> String {
        let base = self.regime.label();
        let mut parts = Vec::new();
        match self.betti[k] {
            0 => {}
            1 => parts.push(base.to_string()),
            b => parts.push(format!("{base}^{b}")),
        }
        for n in &self.torsion[k] {
            parts.push(format!("{base}/{n}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

pub fn euler_homology(s: &HomologySummary) -> Result<i64> {
    s.euler()
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.grading {
            Grading::Homology => "H_",
            Grading::Cohomology => "H^",
        };
        for (i, &k) in self.degrees.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{sym}{k} = {}", self.group(i))?;
            if let Some(st) = &self.status {
                if st[i] == ReductionStatus::Stuck {
                    write!(f, "  (indeterminate: reduction stuck)")?;
                }
            }
        }
        Ok(())
    }
}

/// Ranks of the differential out of each storage degree, the per-degree
/// torsion of the image, and a status per storage degree.
struct Ranks {
    /// `rank[j]` = rank of `∂_j` (0 for `j = 0` and `j > m`).
    rank: Vec<usize>,
    /// `tors[j]` = torsion invariants of `∂_j`.
    tors: Vec<Vec<BigInt>>,
    stuck: Vec<bool>,
}

fn summarize<R: Ring>(c: &ChainComplex<R>, regime: Regime, r: Ranks) -> Result<HomologySummary> {
    if let Err(v) = c.validate() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    let m = c.dimension();
    let mut betti = vec![0; m + 1];
    let mut torsion = vec![Vec::new(); m + 1];
    let mut status = vec![ReductionStatus::Complete; m + 1];
    for j in 0..=m {
        let k = c.natural_degree(j);
        let n = c.generators(j).len();
        betti[k] = n - r.rank[j] - r.rank[j + 1];
        torsion[k] = r.tors[j + 1].clone();
        if r.stuck[j] || r.stuck[j + 1] {
            status[k] = ReductionStatus::Stuck;
        }
    }
    Ok(HomologySummary {
        regime,
        grading: c.grading(),
        degrees: (0..=m).collect(),
        betti,
        torsion,
        status: (regime == Regime::Nov).then_some(status),
    })
}

fn empty_ranks(m: usize) -> Ranks {
    Ranks {
        rank: vec![0; m + 2],
        tors: vec![Vec::new(); m + 2],
        stuck: vec![false; m + 2],
    }
}

fn homology_int(c: &ChainComplex<BigInt>) -> Result<HomologySummary> {
    let m = c.dimension();
    let mut r = empty_ranks(m);
    for j in 1..=m {
        let s = snf_int(c.boundary(j));
        r.rank[j] = s.rank;
        r.tors[j] = s.invariant_factors.factors;
    }
    summarize(c, Regime::Int, r)
}

fn homology_exp(c: &ChainComplex<ExpSum>) -> Result<HomologySummary> {
    let m = c.dimension();
    let mut r = empty_ranks(m);
    for j in 1..=m {
        r.rank[j] = rank_expsum(c.boundary(j));
    }
    summarize(c, Regime::Expsum, r)
}

fn homology_nov(c: &ChainComplex<NovElem>, opts: &HomologyOptions) -> Result<HomologySummary> {
    let m = c.dimension();
    let mut r = empty_ranks(m);
    for j in 1..=m {
        let red = nov_reduce(c.boundary(j), &opts.depth, opts.max_iter)?;
        r.rank[j] = red.rank();
        r.tors[j] = red.nonunit_invariants.clone();
        r.stuck[j] = red.status == ReductionStatus::Stuck;
    }
    summarize(c, Regime::Nov, r)
}

/// Standalone form of [`ChainComplex::validate`].
pub fn validate_complex(c: &AnyComplex) -> std::result::Result<(), Violation> {
    c.validate()
}
