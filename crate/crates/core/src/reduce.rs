//! Gauss–Jordan elimination and the subspace operations built on it.
//!
//! Pivot selection is fixed: columns are scanned left to right and the first
//! row at or below the current pivot row with a nonzero entry is used. With
//! exact arithmetic this makes every result below a pure function of its
//! input.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> RrefResult {
    let mut r = m.clone();
    let (rows, cols) = r.shape();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(pivot_row, found);

        let inv = r.get(pivot_row, col).inverse().expect("pivot is nonzero");
        for j in col..cols {
            let v = r.get(pivot_row, j) * &inv;
            r.set(pivot_row, j, v);
        }

        for i in 0..rows {
            if i == pivot_row || r.get(i, col).is_zero() {
                continue;
            }
            let factor = r.get(i, col).clone();
            for j in col..cols {
                let v = r.get(i, j) - &(&factor * r.get(pivot_row, j));
                r.set(i, j, v);
            }
        }

        pivot_cols.push(col);
        pivot_row += 1;
    }

    RrefResult {
        rank: pivot_cols.len(),
        rref: r,
        pivot_cols,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Canonical free-variable basis of `{x : Mx = 0}`, one column per
/// non-pivot column of `M`, in column order.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let red = rref(m);
    let field = m.field();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !red.pivot_cols.contains(c)).collect();

    let mut k = Matrix::zeros(field, n, free.len());
    for (slot, &f) in free.iter().enumerate() {
        k.set(f, slot, field.one());
        for (row, &p) in red.pivot_cols.iter().enumerate() {
            k.set(p, slot, -red.rref.get(row, f));
        }
    }
    k
}

/// The leftmost maximal set of independent columns of `M`.
pub fn pivot_column_basis(m: &Matrix) -> Matrix {
    m.select_columns(&rref(m).pivot_cols)
}

/// Extends the independent columns of `partial` to a basis of the column
/// span of `space`, taking columns of `space` greedily from the left.
pub fn extend_basis(partial: &Matrix, space: &Matrix) -> Result<Matrix> {
    let joined = partial.hstack(space)?;
    let k = partial.cols();
    if rank(partial) != k {
        return Err(Error::NotIndependent);
    }
    let red = rref(&joined);
    if red.rank != rank(space) {
        return Err(Error::NotContained);
    }
    // partial is independent, so its columns are exactly the first k pivots
    let added: Vec<usize> = red.pivot_cols[k..].iter().map(|c| c - k).collect();
    partial.hstack(&space.select_columns(&added))
}

/// Solves `N Z = M` for `Z`, or returns `None` if some column of `M` is not
/// in the column span of `N`. Free variables are set to zero.
pub fn solve_right(n: &Matrix, m: &Matrix) -> Result<Option<Matrix>> {
    if n.rows() != m.rows() {
        return Err(Error::dims("solve_right", n.shape(), m.shape()));
    }
    let aug = n.hstack(m)?;
    let red = rref(&aug);
    let ncols = n.cols();
    if red.pivot_cols.last().is_some_and(|&c| c >= ncols) {
        return Ok(None);
    }
    let field = n.field();
    let mut z = Matrix::zeros(field, ncols, m.cols());
    for (row, &p) in red.pivot_cols.iter().enumerate() {
        for j in 0..m.cols() {
            z.set(p, j, red.rref.get(row, ncols + j).clone());
        }
    }
    Ok(Some(z))
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if m.rows() != m.cols() {
        return Err(Error::dims("inverse", m.shape(), m.shape()));
    }
    if rank(m) != m.rows() {
        return Ok(None);
    }
    solve_right(m, &Matrix::identity(m.field(), m.rows()))
}

/// Whether `v` lies in the column span of `basis`.
pub fn in_span(basis: &Matrix, v: &Matrix) -> Result<bool> {
    Ok(solve_right(basis, v)?.is_some())
}

/// The matrix of the linear map sending column `i` of `basis` to column `i`
/// of `images`. `basis` must be square and invertible.
pub(crate) fn map_from_basis(basis: &Matrix, images: &Matrix) -> Result<Matrix> {
    let inv = inverse(basis)?
        .ok_or_else(|| Error::InternalDisagreement("basis matrix is singular".into()))?;
    images.matmul(&inv)
}
