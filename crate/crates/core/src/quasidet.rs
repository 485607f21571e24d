//! Quasideterminants.
//!
//! The quasideterminant at index `(i, j)` of an `n×n` matrix `a` pivots on
//! the entry in row `j`, column `i`:
//!
//! ```text
//! |a|_(i,j) = a^j_i − r ∘ (a with row j, column i removed)⁻¹ ∘ c
//! ```
//!
//! where `r` is row `j` without column `i` and `c` is column `i` without
//! row `j`, all products taken under one kind. When the inverse of `a`
//! exists, `|a|_(i,j) = ((a⁻¹)^i_j)⁻¹`.
//!
//! The minor is inverted by Gaussian elimination; the inverse identity is
//! then a check, not the computation path.

use crate::algebra::{Scalar, Tol};
use crate::biring::{inverse, mul3, Kind, Matrix};
use crate::error::{Error, Result};

/// Zero-based selector: `i` picks the column of the pivot entry (and the
/// row of the matching inverse entry), `j` the row of the pivot entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasidetIndex {
    pub i: usize,
    pub j: usize,
}

impl QuasidetIndex {
    pub fn new(i: usize, j: usize) -> Self {
        QuasidetIndex { i, j }
    }
}

/// Quasideterminant of `a` at `idx` under `kind`.
pub fn quasidet<S: Scalar>(a: &Matrix<S>, idx: QuasidetIndex, kind: Kind, tol: Tol) -> Result<S> {
    let n = a.require_square("quasidet")?;
    if n == 0 || idx.i >= n || idx.j >= n {
        return Err(Error::Invalid(format!("quasideterminant index ({}, {}) out of range for n = {n}", idx.i, idx.j)));
    }
    match kind {
        Kind::Rc => rc_quasidet(a, idx, tol),
        // (a ∘cr b) = (aᵀ ∘rc bᵀ)ᵀ and the cr inverse of a is the transposed
        // rc inverse of aᵀ, so the selector swaps with the transpose.
        Kind::Cr => rc_quasidet(&a.transpose(), QuasidetIndex::new(idx.j, idx.i), tol),
    }
}

fn rc_quasidet<S: Scalar>(a: &Matrix<S>, QuasidetIndex { i, j }: QuasidetIndex, tol: Tol) -> Result<S> {
    let n = a.rows();
    let pivot = a[(j, i)].clone();
    if n == 1 {
        return Ok(pivot);
    }
    let minor_inv = inverse(&a.minor(j, i), Kind::Rc, tol).map_err(|_| Error::UndefinedQuasideterminant { i, j })?;
    let row = Matrix::row_vector((0..n).filter(|&c| c != i).map(|c| a[(j, c)].clone()).collect());
    let col = Matrix::column_vector((0..n).filter(|&r| r != j).map(|r| a[(r, i)].clone()).collect());
    let coupling = mul3(&row, &minor_inv, &col, Kind::Rc)?;
    Ok(pivot - coupling[(0, 0)].clone())
}

/// All `n²` quasideterminants; entry `(i, j)` holds `quasidet(a, (i, j))`
/// or `None` where the deleted minor is singular.
pub fn quasidet_matrix<S: Scalar>(a: &Matrix<S>, kind: Kind, tol: Tol) -> Result<Matrix<Option<S>>> {
    let n = a.require_square("quasidet_matrix")?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(match quasidet(a, QuasidetIndex::new(i, j), kind, tol) {
                Ok(v) => Some(v),
                Err(Error::UndefinedQuasideterminant { .. }) => None,
                Err(e) => return Err(e),
            });
        }
        out.push(row);
    }
    Matrix::from_rows(out)
}
