//! Dense linear-algebra helpers shared by the basis builders.

use nalgebra::{DMatrix, DVector};

/// Relative pivot threshold used for nullspace extraction.
pub const NULLSPACE_REL_TOL: f64 = 1e-10;

/// Basis of the nullspace of `a`, one vector per free column.
///
/// Gauss-Jordan elimination with partial pivoting; a column whose best
/// remaining pivot falls below `rel_tol * max|a_ij|` is treated as free. Each
/// returned vector has a unit entry on its free column.
pub fn nullspace(a: &DMatrix<f64>, rel_tol: f64) -> Vec<DVector<f64>> {
    let (rows, cols) = a.shape();
    let scale = a.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if rows == 0 || scale == 0.0 {
        return (0..cols)
            .map(|j| {
                let mut v = DVector::zeros(cols);
                v[j] = 1.0;
                v
            })
            .collect();
    }
    let tol = rel_tol * scale;
    let mut m = a.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            free.push(col);
            continue;
        }
        let (best, best_abs) = (row..rows)
            .map(|r| (r, m[(r, col)].abs()))
            .fold((row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best_abs <= tol {
            free.push(col);
            continue;
        }
        m.swap_rows(row, best);
        let inv = 1.0 / m[(row, col)];
        for c in col..cols {
            m[(row, c)] *= inv;
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let factor = m[(r, col)];
            if factor == 0.0 {
                continue;
            }
            for c in col..cols {
                let delta = factor * m[(row, c)];
                m[(r, c)] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    free.iter()
        .map(|&f| {
            let mut v = DVector::zeros(cols);
            v[f] = 1.0;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[(i, f)];
            }
            v
        })
        .collect()
}

/// Numerical rank by the same elimination as [`nullspace`].
pub fn rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    a.ncols() - nullspace(a, rel_tol).len()
}
