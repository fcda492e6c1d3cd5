//! Dense exact linear algebra over the rationals.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, to_i64, Q};

pub type QMatrix = Vec<Vec<Q>>;
pub type IntMatrix = Vec<Vec<i64>>;

pub fn to_q_matrix(m: &IntMatrix) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn transpose(m: &QMatrix) -> QMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(m: &QMatrix, cols: usize) -> Vec<Vec<Q>> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
    }
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn det(m: &QMatrix) -> Q {
    let n = m.len();
    let mut m = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                let pivot_row = m[c].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// The unique solution of `m x = b` when `m` has full column rank.
pub fn solve_unique(m: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    Some((0..cols).map(|i| r[i][cols].clone()).collect())
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let mq = to_q_matrix(m);
    let d = det(&mq);
    if d.abs() != Q::one() {
        return Err(Error::NotUnimodular(crate::rational::format_q(&d)));
    }
    let inv = inverse(&mq).ok_or_else(|| Error::NotUnimodular("0".into()))?;
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|v| to_i64(v).ok_or(Error::Internal("unimodular inverse is not integral".into())))
                .collect()
        })
        .collect()
}
