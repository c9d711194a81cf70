//! Exact dense linear solves over the rationals.

use num::Zero;

use crate::error::{Error, Result};
use crate::Q;

/// Solve `A x = b` by Gaussian elimination with the first nonzero pivot.
/// `a` is row-major `n x n`. Returns `SingularGram` on a zero pivot column.
pub fn solve(a: &[Q], b: &[Q], n: usize) -> Result<Vec<Q>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = a[r * n..(r + 1) * n].to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Err(Error::SingularGram),
        };
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = std::mem::replace(&mut m[r][col], Q::zero());
                for j in (col + 1)..=n {
                    let delta = &f * &m[col][j];
                    if !delta.is_zero() {
                        m[r][j] = &m[r][j] - delta;
                    }
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Solve a symmetric positive-definite system by LDL^T (no pivot search).
/// A zero pivot means the matrix was not positive definite.
pub fn solve_spd(a: &[Q], b: &[Q], n: usize) -> Result<Vec<Q>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    // L strictly lower unitriangular (row-major), d the diagonal.
    let mut l = vec![Q::zero(); n * n];
    let mut d = vec![Q::zero(); n];
    for j in 0..n {
        let mut dj = a[j * n + j].clone();
        for k in 0..j {
            let ljk = &l[j * n + k];
            if !ljk.is_zero() {
                dj -= ljk * ljk * &d[k];
            }
        }
        if dj.is_zero() {
            return Err(Error::SingularGram);
        }
        d[j] = dj;
        for i in (j + 1)..n {
            let mut s = a[i * n + j].clone();
            for k in 0..j {
                let lik = &l[i * n + k];
                let ljk = &l[j * n + k];
                if !lik.is_zero() && !ljk.is_zero() {
                    s -= lik * ljk * &d[k];
                }
            }
            l[i * n + j] = s / &d[j];
        }
    }
    // Forward solve L y = b, scale by D, back solve L^T x = y.
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            if !l[i * n + k].is_zero() {
                let delta = &l[i * n + k] * &y[k];
                y[i] = &y[i] - delta;
            }
        }
    }
    for i in 0..n {
        y[i] = &y[i] / &d[i];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            if !l[k * n + i].is_zero() {
                let delta = &l[k * n + i] * &y[k];
                y[i] = &y[i] - delta;
            }
        }
    }
    Ok(y)
}
