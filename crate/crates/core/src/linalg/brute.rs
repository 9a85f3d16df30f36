use num_bigint::BigInt;
use num_traits::Zero;

use super::Matrix;
use crate::error::{Error, Result};

const LIMIT: usize = 6;

/// Rank by exhaustive minor expansion. Independent of every elimination
/// routine in this crate; only meant as a test oracle.
pub fn rank_int_bruteforce(a: &Matrix<BigInt>) -> Result<usize> {
    if a.rows() > LIMIT || a.cols() > LIMIT {
        return Err(Error::TooLarge { rows: a.rows(), cols: a.cols() });
    }
    for k in (1..=a.rows().min(a.cols())).rev() {
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect())
                    .collect();
                if !laplace_det(&minor).is_zero() {
                    return Ok(k);
                }
            }
        }
    }
    Ok(0)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    // subsets not containing n-1, then those containing it
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => {
            let mut det = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * laplace_det(&sub);
                if j % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
    }
}
