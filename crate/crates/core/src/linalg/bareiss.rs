use num_traits::{One, Zero};

use super::Matrix;
use crate::rings::ExpSum;

/// Rank over the fraction field of `ℚ[t^ℚ]`, by fraction-free elimination.
///
/// Since distinct rational powers of `e` are linearly independent over ℚ,
/// this is also the rank of the matrix evaluated at `t = e`.
pub fn rank_expsum(a: &Matrix<ExpSum>) -> usize {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut prev = ExpSum::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !w[(i, c)].is_zero()) else {
            continue;
        };
        w.swap_rows(r, p);
        let pivot = w[(r, c)].clone();
        for i in r + 1..m {
            let lead = w[(i, c)].clone();
            for j in c + 1..n {
                let x = &(&pivot * &w[(i, j)]) - &(&lead * &w[(r, j)]);
                // Sylvester's identity makes this division exact; should it
                // ever fail, the undivided value spans the same row space.
                w[(i, j)] = x.div_exact(&prev).unwrap_or(x);
            }
            w[(i, c)] = ExpSum::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}
