//! Matrices over a division algebra with the row-column (rc) and
//! column-row (cr) products.
//!
//! * rc: `(a∘b)^i_j = Σ_k a^i_k · b^k_j`, the usual product.
//! * cr: `(a∘b)^i_j = Σ_k a^k_j · b^i_k`: column of `a` against row of `b`.
//!
//! Both products share the identity `E_n`. The cr product is the rc product
//! conjugated by transposition, `a ∘cr b = (aᵀ ∘rc bᵀ)ᵀ`, and every cr
//! routine here (inverse, rank, solve) goes through that identity so that
//! a single elimination kernel does all the work.

mod elimination;
mod matrix;

use std::fmt;

pub use elimination::row_rank;
pub use matrix::Matrix;

use crate::algebra::{Scalar, Tol};
use crate::error::{Error, Result};

/// Which matrix product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Row of the left factor against column of the right factor.
    Rc,
    /// Column of the left factor against row of the right factor.
    Cr,
}

impl Kind {
    pub fn other(self) -> Kind {
        match self {
            Kind::Rc => Kind::Cr,
            Kind::Cr => Kind::Rc,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Rc => "rc",
            Kind::Cr => "cr",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Side on which scalars act: on vectors, rows during elimination, or the
/// side of an eigenvalue equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Position of the unknown vector in a linear system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `v ∘ a = y`
    VectorOnLeft,
    /// `a ∘ v = y`
    VectorOnRight,
}

/// Product of `a` and `b` under `kind`.
///
/// rc needs `a.cols == b.rows` and gives `a.rows × b.cols`; cr needs
/// `a.rows == b.cols` and gives `b.rows × a.cols`.
pub fn mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, kind: Kind) -> Result<Matrix<S>> {
    let shape_err = || Error::Shape { op: "mul", left: a.shape(), right: b.shape(), kind: Some(kind) };
    match kind {
        Kind::Rc => {
            if a.cols() != b.rows() {
                return Err(shape_err());
            }
            Ok(Matrix::from_fn(a.rows(), b.cols(), |i, j| {
                (0..a.cols()).fold(S::zero(), |acc, k| acc + a[(i, k)].clone() * b[(k, j)].clone())
            }))
        }
        Kind::Cr => {
            if a.rows() != b.cols() {
                return Err(shape_err());
            }
            Ok(Matrix::from_fn(b.rows(), a.cols(), |i, j| {
                (0..a.rows()).fold(S::zero(), |acc, k| acc + a[(k, j)].clone() * b[(i, k)].clone())
            }))
        }
    }
}

/// `a ∘ b ∘ c` under one kind.
pub fn mul3<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, c: &Matrix<S>, kind: Kind) -> Result<Matrix<S>> {
    mul(&mul(a, b, kind)?, c, kind)
}

/// `a⁰ = E_n`, `aᵏ = aᵏ⁻¹ ∘ a`.
pub fn power<S: Scalar>(a: &Matrix<S>, k: u32, kind: Kind) -> Result<Matrix<S>> {
    let n = a.require_square("power")?;
    (0..k).try_fold(Matrix::identity(n), |acc, _| mul(&acc, a, kind))
}

/// Rank under `kind`: the number of pivots of the elimination that decides
/// invertibility for that product.
pub fn rank<S: Scalar>(a: &Matrix<S>, kind: Kind, tol: Tol) -> usize {
    match kind {
        Kind::Rc => row_rank(a, Side::Left, tol),
        Kind::Cr => row_rank(&a.transpose(), Side::Left, tol),
    }
}

/// `true` when the square matrix `a` has no inverse under `kind`.
pub fn is_singular<S: Scalar>(a: &Matrix<S>, kind: Kind, tol: Tol) -> bool {
    rank(a, kind, tol) < a.rows()
}

/// Two-sided inverse under `kind`.
///
/// rc rows are reduced with scalars multiplying from the left; the cr
/// inverse is `(rc-inverse of aᵀ)ᵀ`.
pub fn inverse<S: Scalar>(a: &Matrix<S>, kind: Kind, tol: Tol) -> Result<Matrix<S>> {
    let n = a.require_square("inverse")?;
    match kind {
        Kind::Rc => {
            let aug = Matrix::from_fn(n, 2 * n, |i, j| {
                if j < n {
                    a[(i, j)].clone()
                } else if j - n == i {
                    S::one()
                } else {
                    S::zero()
                }
            });
            let ech = elimination::row_reduce(aug, n, Side::Left, tol);
            if ech.pivots.len() < n {
                return Err(Error::Singular { rank: ech.pivots.len(), n });
            }
            Ok(Matrix::from_fn(n, n, |i, j| ech.reduced[(i, j + n)].clone()))
        }
        Kind::Cr => Ok(inverse(&a.transpose(), Kind::Rc, tol)?.transpose()),
    }
}

/// Particular solution plus a basis of the homogeneous solutions.
///
/// For [`Orientation::VectorOnRight`] the homogeneous set is closed under
/// right scalar multiplication `v·c`, for [`Orientation::VectorOnLeft`]
/// under left multiplication `c·v`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet<S> {
    pub particular: Matrix<S>,
    pub kernel: Vec<Matrix<S>>,
}

/// Solves `v ∘ a = y` or `a ∘ v = y` under `kind`.
///
/// The unknown `v` is a row or a column depending on orientation and kind:
///
/// | kind | orientation | `v` shape | equation |
/// |------|-------------|-----------|----------|
/// | rc | right | column, `a.cols` | `Σ_k a^i_k v^k = y^i` |
/// | rc | left | row, `a.rows` | `Σ_k v_k a^k_j = y_j` |
/// | cr | right | row, `a.rows` | `Σ_k a^k_j v_k = y_j` |
/// | cr | left | column, `a.cols` | `Σ_k v^k a^i_k = y^i` |
///
/// `y` must have the shape of `v ∘ a` (resp. `a ∘ v`).
pub fn solve<S: Scalar>(
    a: &Matrix<S>,
    y: &Matrix<S>,
    orientation: Orientation,
    kind: Kind,
    tol: Tol,
) -> Result<SolutionSet<S>> {
    // Reduce to `Σ_k m_ik x_k = r_i` (side Left) or `Σ_k x_k m_ik = r_i`
    // (side Right). `column` records whether `v` is a column.
    let (m, side, column) = match (kind, orientation) {
        (Kind::Rc, Orientation::VectorOnRight) => (a.clone(), Side::Left, true),
        (Kind::Rc, Orientation::VectorOnLeft) => (a.transpose(), Side::Right, false),
        (Kind::Cr, Orientation::VectorOnRight) => (a.transpose(), Side::Left, false),
        (Kind::Cr, Orientation::VectorOnLeft) => (a.clone(), Side::Right, true),
    };
    let expected = if column { (m.rows(), 1) } else { (1, m.rows()) };
    if y.shape() != expected {
        return Err(Error::Shape { op: "solve", left: a.shape(), right: y.shape(), kind: Some(kind) });
    }
    let rhs: Vec<S> = y.iter().cloned().collect();
    let (particular, kernel) = elimination::solve_system(&m, &rhs, side, tol).ok_or(Error::NoSolution)?;
    let shape = |v: Vec<S>| if column { Matrix::column_vector(v) } else { Matrix::row_vector(v) };
    Ok(SolutionSet { particular: shape(particular), kernel: kernel.into_iter().map(shape).collect() })
}

/// Basis of solutions of `v ∘ a = 0` or `a ∘ v = 0`.
pub fn kernel<S: Scalar>(a: &Matrix<S>, orientation: Orientation, kind: Kind, tol: Tol) -> Vec<Matrix<S>> {
    let zero = match (kind, orientation) {
        (Kind::Rc, Orientation::VectorOnRight) | (Kind::Cr, Orientation::VectorOnLeft) => Matrix::zeros(a.rows(), 1),
        _ => Matrix::zeros(1, a.cols()),
    };
    solve(a, &zero, orientation, kind, tol).map(|s| s.kernel).unwrap_or_default()
}
