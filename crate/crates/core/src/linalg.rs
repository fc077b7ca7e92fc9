//! Exact Gaussian elimination over `Q(sqrt p)`.

use crate::error::{Error, Result};
use crate::scalar::QuadScalar;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<QuadScalar>], ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().ok_or_else(|| {
            Error::Internal(format!("pivot {} is a zero divisor", m[r][c]))
        })?;
        let row: Vec<QuadScalar> = m[r].iter().map(|x| x * &inv).collect();
        for (i, other) in m.iter_mut().enumerate() {
            if i == r || other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (x, y) in other.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        m[r] = row;
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(rows: &[Vec<QuadScalar>], ncols: usize) -> Result<usize> {
    let mut m = rows.to_vec();
    Ok(rref(&mut m, ncols)?.len())
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn kernel_basis(rows: &[Vec<QuadScalar>], ncols: usize, p: i64) -> Result<Vec<Vec<QuadScalar>>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols)?;
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![QuadScalar::zero(p); ncols];
            v[f] = QuadScalar::one(p);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect())
}
