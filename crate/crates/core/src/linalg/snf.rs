use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::rings::InvariantFactorList;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    pub u: Matrix<BigInt>,
    pub d: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    pub rank: usize,
    pub invariant_factors: InvariantFactorList,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    d: Matrix<BigInt>,
    u: Matrix<BigInt>,
    v: Matrix<BigInt>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    /// row_i -= q·row_k
    fn sub_row(&mut self, i: usize, q: &BigInt, k: usize) {
        let one = BigInt::one();
        self.d.combine_rows(i, &one, k, q);
        self.u.combine_rows(i, &one, k, q);
    }

    fn sub_col(&mut self, j: usize, q: &BigInt, k: usize) {
        let one = BigInt::one();
        self.d.combine_cols(j, &one, k, q);
        self.v.combine_cols(j, &one, k, q);
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form by repeated Euclidean elimination on the smallest entry.
pub fn snf_int(a: &Matrix<BigInt>) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: Matrix::identity(m),
        v: Matrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.smallest_from(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = w.d[(i, t)].div_floor(&p);
                if !q.is_zero() {
                    w.sub_row(i, &q, t);
                }
                dirty |= !w.d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = w.d[(t, j)].div_floor(&p);
                if !q.is_zero() {
                    w.sub_col(j, &q, t);
                }
                dirty |= !w.d[(t, j)].is_zero();
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it in
                let (pi, pj) = (t..m)
                    .map(|i| (i, t))
                    .chain((t..n).map(|j| (t, j)))
                    .filter(|&(i, j)| !w.d[(i, j)].is_zero())
                    .min_by_key(|&(i, j)| w.d[(i, j)].abs())
                    .expect("pivot row or column is nonzero");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // divisibility: fold any offending row into the pivot row
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&w.d[(i, j)] % &p).is_zero())
            });
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    w.sub_row(t, &minus_one, i);
                }
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            let minus_one = -BigInt::one();
            let zero = BigInt::zero();
            w.d.combine_rows(t, &minus_one, t, &zero);
            w.u.combine_rows(t, &minus_one, t, &zero);
        }
        t += 1;
    }
    let rank = (0..m.min(n)).filter(|&i| !w.d[(i, i)].is_zero()).count();
    let diag: Vec<BigInt> = (0..rank).map(|i| w.d[(i, i)].clone()).collect();
    SnfResult {
        invariant_factors: InvariantFactorList::from_nonzero_diagonal(&diag),
        u: w.u,
        d: w.d,
        v: w.v,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_int_bruteforce;
    use proptest::prelude::*;

    fn det(m: &Matrix<BigInt>) -> BigInt {
        // Bareiss over ℤ; only used on unimodular matrices here
        let n = m.rows();
        let mut a = m.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn check(a: &Matrix<BigInt>) -> SnfResult {
        let r = snf_int(a);
        assert_eq!(r.u.mul(a).unwrap().mul(&r.v).unwrap(), r.d);
        assert_eq!(det(&r.u).abs(), BigInt::one());
        assert_eq!(det(&r.v).abs(), BigInt::one());
        for (i, j, x) in r.d.entries() {
            if i != j {
                assert!(x.is_zero());
            }
        }
        for i in 1..r.rank {
            assert!((&r.d[(i, i)] % &r.d[(i - 1, i - 1)]).is_zero());
        }
        r
    }

    #[test]
    fn documented_cases() {
        let r = check(&Matrix::from_i64(&[&[2]]));
        assert_eq!((r.rank, r.invariant_factors.factors.clone()), (1, vec![BigInt::from(2)]));
        let r = check(&Matrix::zeros(2, 3));
        assert_eq!(r.rank, 0);
        assert!(r.invariant_factors.factors.is_empty());
        let r = check(&Matrix::from_i64(&[&[1, -1], &[-1, 1]]));
        assert_eq!(r.rank, 1);
        assert!(r.invariant_factors.factors.is_empty());
    }

    #[test]
    fn divisibility_fix() {
        let r = check(&Matrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let r = check(&Matrix::from_i64(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(2), BigInt::from(60)]);
    }

    proptest! {
        #[test]
        fn random_matrices(m in 0usize..6, n in 0usize..6, seed in prop::collection::vec(-5i64..=5, 36)) {
            let rows: Vec<Vec<BigInt>> = (0..m).map(|i| (0..n).map(|j| BigInt::from(seed[i * 6 + j])).collect()).collect();
            let a = if m == 0 { Matrix::zeros(0, n) } else { Matrix::from_rows(rows).unwrap() };
            let r = check(&a);
            prop_assert_eq!(r.rank, rank_int_bruteforce(&a).unwrap());
        }
    }
}
