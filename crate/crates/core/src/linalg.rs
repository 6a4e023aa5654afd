//! Exact linear algebra kernels: fraction-free integer determinants and
//! rational Gaussian elimination.
//!
//! The matrices here are intersection forms of curve configurations, so
//! they are symmetric, sparse (banded once the vertices are ordered along
//! a chain) and have tiny entries. Both kernels track which columns of a
//! row can be nonzero, which keeps the chain case linear-time instead of
//! cubic.

use num::{BigRational, Zero};

/// Fraction-free (Bareiss) determinant over the integers.
///
/// Intermediate values are bordered minors of the input, which for the
/// configurations in scope stay far below the i128 range; the arithmetic
/// is checked so an overflow would abort instead of corrupting a result.
pub fn bareiss_det(matrix: &[Vec<i64>]) -> i128 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let (mut lo, mut hi) = spans_int(&a);
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for p in 0..n {
        if a[p][p] == 0 {
            match (p + 1..n).find(|&i| a[i][p] != 0) {
                Some(i) => {
                    a.swap(p, i);
                    lo.swap(p, i);
                    hi.swap(p, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        let pivot = a[p][p];
        for i in p + 1..n {
            let f = a[i][p];
            let (jlo, jhi) = if f != 0 {
                (lo[i].min(lo[p]), hi[i].max(hi[p]))
            } else {
                (lo[i], hi[i])
            };
            let jlo = jlo.max(p + 1);
            if jlo <= jhi {
                for j in jlo..=jhi {
                    let t = pivot
                        .checked_mul(a[i][j])
                        .and_then(|x| f.checked_mul(a[p][j]).map(|y| x - y))
                        .expect("determinant intermediate overflowed i128");
                    // Exact by the Bareiss identity.
                    a[i][j] = t / prev;
                }
                lo[i] = jlo;
                hi[i] = jhi;
            }
            a[i][p] = 0;
        }
        prev = pivot;
    }
    sign * a[n - 1][n - 1]
}

/// Leading principal minors d_1, ..., d_n from a single fraction-free
/// elimination pass. Returns `None` as soon as a minor vanishes (no row
/// exchange is allowed here: the minors are tied to the given order).
pub fn leading_principal_minors(matrix: &[Vec<i64>]) -> Option<Vec<i128>> {
    let n = matrix.len();
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let (mut lo, mut hi) = spans_int(&a);
    let mut minors = Vec::with_capacity(n);
    let mut prev: i128 = 1;
    for p in 0..n {
        let pivot = a[p][p];
        if pivot == 0 {
            return None;
        }
        minors.push(pivot);
        for i in p + 1..n {
            let f = a[i][p];
            let (jlo, jhi) = if f != 0 {
                (lo[i].min(lo[p]), hi[i].max(hi[p]))
            } else {
                (lo[i], hi[i])
            };
            let jlo = jlo.max(p + 1);
            if jlo <= jhi {
                for j in jlo..=jhi {
                    let t = pivot
                        .checked_mul(a[i][j])
                        .and_then(|x| f.checked_mul(a[p][j]).map(|y| x - y))
                        .expect("minor intermediate overflowed i128");
                    a[i][j] = t / prev;
                }
                lo[i] = jlo;
                hi[i] = jhi;
            }
            a[i][p] = 0;
        }
        prev = pivot;
    }
    Some(minors)
}

fn spans_int(a: &[Vec<i128>]) -> (Vec<usize>, Vec<usize>) {
    let n = a.len();
    let mut lo = vec![0usize; n];
    let mut hi = vec![0usize; n];
    for (i, row) in a.iter().enumerate() {
        lo[i] = row.iter().position(|x| *x != 0).unwrap_or(n - 1);
        hi[i] = row.iter().rposition(|x| *x != 0).unwrap_or(0);
        if hi[i] < lo[i] {
            // all-zero row
            lo[i] = 0;
            hi[i] = 0;
        }
    }
    (lo, hi)
}

/// Solve `A x = b` exactly over the rationals. Returns `None` when the
/// matrix is singular. Rows whose factor vanishes are left untouched, so
/// banded systems are eliminated in near-linear time.
pub fn solve_exact(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    for p in 0..n {
        if a[p][p].is_zero() {
            let i = (p + 1..n).find(|&i| !a[i][p].is_zero())?;
            a.swap(p, i);
            b.swap(p, i);
        }
        let pivot = a[p][p].clone();
        for i in p + 1..n {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &pivot;
            for j in p + 1..n {
                if a[p][j].is_zero() {
                    continue;
                }
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
            let t = &f * &b[p];
            b[i] -= t;
            a[i][p] = BigRational::zero();
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for p in (0..n).rev() {
        let mut acc = b[p].clone();
        for j in p + 1..n {
            if a[p][j].is_zero() || x[j].is_zero() {
                continue;
            }
            acc -= &a[p][j] * &x[j];
        }
        x[p] = acc / &a[p][p];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn det_small_cases() {
        assert_eq!(bareiss_det(&[]), 1);
        assert_eq!(bareiss_det(&[vec![-2]]), -2);
        assert_eq!(bareiss_det(&[vec![-2, 1], vec![1, -2]]), 3);
        assert_eq!(bareiss_det(&[vec![-3, 1], vec![1, -2]]), 5);
        // singular
        assert_eq!(bareiss_det(&[vec![1, 2], vec![2, 4]]), 0);
        // needs a row swap
        assert_eq!(bareiss_det(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn det_matches_cofactor_expansion_on_dense_matrices() {
        // independent oracle: naive cofactor expansion
        fn naive(m: &[Vec<i64>]) -> i128 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            let mut det = 0i128;
            for (j, &x) in m[0].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                det += s * (x as i128) * naive(&minor);
            }
            det
        }
        let m = vec![
            vec![-2, 1, 0, 1],
            vec![1, -3, 1, 0],
            vec![0, 1, -2, 1],
            vec![1, 0, 1, -4],
        ];
        assert_eq!(bareiss_det(&m), naive(&m));
    }

    #[test]
    fn minors_alternate_for_negative_definite_chain() {
        let m = vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]];
        assert_eq!(leading_principal_minors(&m), Some(vec![-2, 3, -4]));
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = vec![vec![rat(-2, 1), rat(1, 1)], vec![rat(1, 1), rat(-2, 1)]];
        let b = vec![rat(-1, 1), rat(0, 1)];
        let x = solve_exact(a, b).unwrap();
        assert_eq!(x, vec![rat(2, 3), rat(1, 3)]);
    }

    #[test]
    fn solve_detects_singular() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(solve_exact(a, vec![rat(1, 1), rat(1, 1)]).is_none());
    }
}
