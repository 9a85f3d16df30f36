use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};
use crate::rings::{format_rational, InvariantFactorList, NovElem, Rational};

pub const DEFAULT_DEPTH: i64 = 16;
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionStatus {
    Complete,
    Stuck,
}

/// Result of [`nov_reduce`]: `U·A·V` agrees with the diagonal matrix built
/// from `diagonal` above every entry's truncation floor.
#[derive(Clone, Debug)]
pub struct NovReduction {
    pub diagonal: Vec<NovElem>,
    pub unit_count: usize,
    /// Cyclic torsion invariants `n` (summands `Nov/nNov`), each at least 2,
    /// each dividing the next.
    pub nonunit_invariants: Vec<BigInt>,
    pub status: ReductionStatus,
    pub u: Matrix<NovElem>,
    pub v: Matrix<NovElem>,
    pub operations: usize,
}

impl NovReduction {
    /// Number of nonzero diagonal entries seen.
    pub fn rank(&self) -> usize {
        self.unit_count + self.nonunit_invariants.len()
    }
}

struct Work {
    d: Matrix<NovElem>,
    u: Matrix<NovElem>,
    v: Matrix<NovElem>,
    ops: usize,
}

impl Work {
    fn swap(&mut self, t: usize, (i, j): (usize, usize)) {
        self.d.swap_rows(t, i);
        self.u.swap_rows(t, i);
        self.d.swap_cols(t, j);
        self.v.swap_cols(t, j);
    }

    /// row_i ← a·row_i − b·row_k; legal whenever `a` is a unit.
    fn rows(&mut self, i: usize, a: &NovElem, k: usize, b: &NovElem) {
        self.d.combine_rows(i, a, k, b);
        self.u.combine_rows(i, a, k, b);
        self.ops += 1;
    }

    fn cols(&mut self, j: usize, a: &NovElem, k: usize, b: &NovElem) {
        self.d.combine_cols(j, a, k, b);
        self.v.combine_cols(j, a, k, b);
        self.ops += 1;
    }

    /// Smallest |top coefficient|, then larger top exponent, then lowest
    /// (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((BigInt, Rational), (usize, usize))> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let Ok((c, a)) = self.d[(i, j)].top() else {
                    continue;
                };
                let key = (c.abs(), a);
                let better = match &best {
                    None => true,
                    Some(((bc, ba), _)) => key.0 < *bc || (key.0 == *bc && key.1 > *ba),
                };
                if better {
                    best = Some((key, (i, j)));
                }
            }
        }
        best.map(|(_, pos)| pos)
    }
}

/// Diagonalizes a matrix over the Novikov ring by row and column operations
/// that are invertible over `Nov`.
///
/// Unit pivots clear their row and column exactly (`row ← p·row − a·pivot
/// row`, legal because `p` is a unit), so no truncation enters during
/// elimination. A non-unit pivot `n·u` (`u` a unit) clears entries whose
/// coefficients are all divisible by `n`; any other entry is reduced by an
/// integer Euclidean step on its top coefficient. When `max_iter` operations
/// are spent, when a Euclidean chain on one entry descends more than `depth`
/// below its starting exponent without shrinking the top coefficient, or when
/// a diagonal entry is neither a unit nor of the shape `n·u`, the status is
/// `Stuck`.
///
/// At the end unit diagonal entries are normalized to `1` with a truncated
/// inverse of depth `depth`; that is the only place truncation appears.
pub fn nov_reduce(a: &Matrix<NovElem>, depth: &Rational, max_iter: usize) -> Result<NovReduction> {
    if !depth.is_positive() {
        return Err(Error::NonpositiveDepth(format_rational(depth)));
    }
    if let Some((i, j, _)) = a.entries().find(|(_, _, x)| !x.is_exact()) {
        return Err(Error::Indeterminate(format!(
            "matrix entry ({i},{j}) is truncated; reduction needs exact input"
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: Matrix::identity(m),
        v: Matrix::identity(n),
        ops: 0,
    };
    let mut stuck = false;
    // (pivot, target position, top exponent of the target when the chain began)
    let mut chain: Option<(NovElem, (usize, usize), Rational)> = None;
    let mut t = 0;
    'outer: while t < m.min(n) {
        if w.ops >= max_iter {
            stuck = true;
            break;
        }
        let Some(pos) = w.pivot(t) else {
            break;
        };
        w.swap(t, pos);
        let p = w.d[(t, t)].clone();
        let (top, gamma) = p.top()?;

        if p.is_unit() {
            for i in t + 1..m {
                let b = w.d[(i, t)].clone();
                if !b.is_zero() {
                    w.rows(i, &p, t, &b);
                }
            }
            for j in t + 1..n {
                let b = w.d[(t, j)].clone();
                if !b.is_zero() {
                    w.cols(j, &p, t, &b);
                }
            }
            t += 1;
            continue;
        }

        let unit_part = if p.is_monomial_times_unit() {
            p.div_integer(&top)
        } else {
            None
        };
        let targets = (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
        for (i, j) in targets {
            let b = w.d[(i, j)].clone();
            if b.is_zero() {
                continue;
            }
            let along_row = j == t;
            if let (Some(u), Some(q)) = (&unit_part, b.div_integer(&top)) {
                if along_row {
                    w.rows(i, u, t, &q);
                } else {
                    w.cols(j, u, t, &q);
                }
                continue;
            }
            // Euclidean step on top coefficients, then look for a new pivot.
            let (bc, ba) = b.top()?;
            match &chain {
                Some((cp, pos, start)) if cp == &p && *pos == (i, j) => {
                    if ba < start - depth {
                        // quotient does not terminate within the depth window
                        stuck = true;
                        break 'outer;
                    }
                }
                _ => chain = Some((p.clone(), (i, j), ba.clone())),
            }
            let q = NovElem::monomial(bc.div_floor(&top), &ba - &gamma);
            let one = NovElem::one();
            if along_row {
                w.rows(i, &one, t, &q);
            } else {
                w.cols(j, &one, t, &q);
            }
            continue 'outer;
        }
        t += 1;
    }

    let rank_bound = m.min(n);
    let mut diagonal: Vec<NovElem> = (0..rank_bound).map(|i| w.d[(i, i)].clone()).collect();
    let mut units = 0usize;
    let mut tops = Vec::new();
    for (i, e) in diagonal.iter_mut().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_unit() {
            let inv = e.invert(depth)?;
            *e = &*e * &inv;
            w.d[(i, i)] = e.clone();
            for j in 0..m {
                w.u[(i, j)] = &w.u[(i, j)] * &inv;
            }
            units += 1;
        } else {
            if !e.is_monomial_times_unit() {
                stuck = true;
            }
            tops.push(e.top()?.0);
        }
    }
    let mut factors = InvariantFactorList::from_nonzero_diagonal(&tops);
    factors.units += units;
    Ok(NovReduction {
        diagonal,
        unit_count: factors.units,
        nonunit_invariants: factors.factors,
        status: if stuck { ReductionStatus::Stuck } else { ReductionStatus::Complete },
        u: w.u,
        v: w.v,
        operations: w.ops,
    })
}

/// True iff `a` and `b` have the same terms above the higher of their
/// truncation floors.
pub fn agrees_above_floors(a: &NovElem, b: &NovElem) -> bool {
    let floor = match (a.floor(), b.floor()) {
        (Some(x), Some(y)) => Some(std::cmp::max(x, y).clone()),
        (x, y) => x.or(y).cloned(),
    };
    let keep = |e: &NovElem| -> Vec<(BigInt, Rational)> {
        e.terms()
            .iter()
            .filter(|(_, x)| floor.as_ref().is_none_or(|f| x > f))
            .cloned()
            .collect()
    };
    keep(a) == keep(b)
}
