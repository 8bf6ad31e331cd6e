//! Exact Gaussian elimination over a single quadratic field.

use crate::error::{Error, Result};
use crate::scalar::QuadScalar;

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce(rows: &mut [Vec<QuadScalar>]) -> Result<Vec<usize>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip()?;
        for x in rows[next].iter_mut() {
            *x = x.try_mul(&inv)?;
        }
        for r in 0..rows.len() {
            if r == next || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..width {
                let delta = factor.try_mul(&rows[next][c])?;
                rows[r][c] = rows[r][c].try_sub(&delta)?;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

pub fn rank(rows: &[Vec<QuadScalar>]) -> Result<usize> {
    let mut work = rows.to_vec();
    Ok(row_reduce(&mut work)?.len())
}

/// Some solution `v` of `matrix · v = target`, with free variables set to
/// zero, or `None` if the system is inconsistent.
pub fn solve(matrix: &[Vec<QuadScalar>], target: &[QuadScalar]) -> Result<Option<Vec<QuadScalar>>> {
    if matrix.len() != target.len() {
        return Err(Error::DimensionMismatch {
            expected: matrix.len(),
            found: target.len(),
        });
    }
    let cols = matrix.first().map_or(0, Vec::len);
    let mut augmented: Vec<Vec<QuadScalar>> = matrix
        .iter()
        .zip(target)
        .map(|(row, t)| {
            let mut r = row.clone();
            r.push(t.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut augmented)?;
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut solution = vec![QuadScalar::zero(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        solution[col] = augmented[row][cols].clone();
    }
    Ok(Some(solution))
}
