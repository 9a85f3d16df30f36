//! Exact matrix algorithms: Smith normal form over ℤ, fraction-free rank over
//! exponential sums, and pivoted diagonalization over the Novikov ring.

mod bareiss;
mod brute;
mod novred;
mod snf;

pub use bareiss::rank_expsum;
pub use brute::rank_int_bruteforce;
pub use novred::{
    agrees_above_floors, nov_reduce, NovReduction, ReductionStatus, DEFAULT_DEPTH, DEFAULT_MAX_ITER,
};
pub use snf::{snf_int, SnfResult};

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::Ring;

/// Dense row-major matrix. For boundary maps rows index the target generators
/// and columns the source generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R> Matrix<R> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / cols.max(1), k % cols.max(1), x))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// `row_i ← a·row_i − b·row_k`.
    pub(crate) fn combine_rows(&mut self, i: usize, a: &R, k: usize, b: &R) {
        for j in 0..self.cols {
            let v = a.clone() * self[(i, j)].clone() - b.clone() * self[(k, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// `col_j ← a·col_j − b·col_k`.
    pub(crate) fn combine_cols(&mut self, j: usize, a: &R, k: usize, b: &R) {
        for i in 0..self.rows {
            let v = a.clone() * self[(i, j)].clone() - b.clone() * self[(i, k)].clone();
            self[(i, j)] = v;
        }
    }

    /// Appends a zero column.
    pub fn with_zero_column(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl Matrix<BigInt> {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

/// One row per line, entries separated by ` | `.
impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[ {} ]", cells.join(" | "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), Matrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
        assert_eq!(Matrix::<BigInt>::zeros(0, 2).mul(&Matrix::zeros(2, 3)).unwrap().rows(), 0);
        assert_eq!(a.to_string(), "[ 1 | 2 ]\n[ 3 | 4 ]");
    }
}
