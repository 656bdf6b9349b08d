//! Dense exact linear algebra over any field implementing [`Coeff`].

use crate::coeff::Coeff;
use crate::error::{Error, Result};

pub type Matrix<F> = Vec<Vec<F>>;

/// Solve `a x = b` for square nonsingular `a`.
pub fn solve<F: Coeff>(mut a: Matrix<F>, mut b: Vec<F>) -> Result<Vec<F>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch(n, b.len()));
    }
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::NotInvertible(format!("singular {n}x{n} system at column {col}")))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].try_inv().ok_or_else(|| Error::NotInvertible("pivot is not a unit".into()))?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].times(&inv);
            for c in col..n {
                let d = f.times(&a[col][c]);
                a[r][c] = a[r][c].minus(&d);
            }
            let d = f.times(&b[col]);
            b[r] = b[r].minus(&d);
        }
    }
    Ok((0..n).map(|i| b[i].times(&a[i][i].try_inv().expect("pivot"))).collect())
}

/// Reduced row echelon form; returns the nonzero rows and the pivot columns.
pub fn rref<F: Coeff>(mut a: Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].try_inv().expect("field element");
        for x in a[r].iter_mut() {
            *x = x.times(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    if a[r][j].is_zero() {
                        continue;
                    }
                    let d = f.times(&a[r][j]);
                    a[i][j] = a[i][j].minus(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn matmul<F: Coeff>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    let mut out = vec![vec![F::zero(); m]; n];
    for i in 0..n {
        for l in 0..inner {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].plus(&a[i][l].times(&b[l][j]));
                }
            }
        }
    }
    out
}

pub fn transpose<F: Coeff>(a: &Matrix<F>) -> Matrix<F> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Gauss-Jordan elimination on `[a | 1]`.
pub fn inverse<F: Coeff>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch(n, a.first().map_or(0, Vec::len)));
    }
    let aug: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain((0..n).map(|j| if i == j { F::one() } else { F::zero() })).collect())
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::NotInvertible(format!("singular {n}x{n} matrix")));
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Moore-Penrose pseudo-inverse of a real matrix through a full-rank
/// factorisation `A = B C`: `A⁺ = Cᵀ (C Cᵀ)⁻¹ (Bᵀ B)⁻¹ Bᵀ`.
pub fn pseudo_inverse<F: Coeff>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let (c, pivots) = rref(a.clone());
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if pivots.is_empty() {
        return Ok(vec![vec![F::zero(); rows]; cols]);
    }
    let b: Matrix<F> = a.iter().map(|r| pivots.iter().map(|&p| r[p].clone()).collect()).collect();
    let bt = transpose(&b);
    let ct = transpose(&c);
    let btb_inv = inverse(&matmul(&bt, &b))?;
    let cct_inv = inverse(&matmul(&c, &ct))?;
    Ok(matmul(&matmul(&ct, &cct_inv), &matmul(&btb_inv, &bt)))
}
