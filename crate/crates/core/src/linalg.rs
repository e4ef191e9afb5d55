//! Exact Gauss-Jordan elimination over a [`Scalar`] field.
//!
//! Pivots are chosen by smallest [`Scalar::weight`] within the column, which
//! keeps intermediate rational functions small.

use crate::error::Result;
use crate::qt::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Scalar>(rows: &mut Vec<Vec<S>>, ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(best) = (r..rows.len()).filter(|&k| !rows[k][col].is_zero()).min_by_key(|&k| rows[k][col].weight())
        else {
            continue;
        };
        rows.swap(r, best);
        let inv = rows[r][col].checked_inv()?;
        let pivot_row: Vec<S> = rows[r].iter().map(|x| x.clone() * &inv).collect();
        rows[r] = pivot_row;
        for k in 0..rows.len() {
            if k == r || rows[k][col].is_zero() {
                continue;
            }
            let factor = rows[k][col].clone();
            let pivot = rows[r].clone();
            for (x, y) in rows[k][col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                if !y.is_zero() {
                    *x = x.clone() - y.clone() * &factor;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Ok(pivots)
}

/// Basis of the right nullspace `{x : A x = 0}`.
pub fn nullspace<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize) -> Result<Vec<Vec<S>>> {
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    let pivots = rref(&mut rows, ncols)?;
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![S::zero(); ncols];
        v[f] = S::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = -row[f].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}
