//! Eigenvalues over a division algebra.
//!
//! Two families of notions live here.
//!
//! *Matrix eigenvalues*: `b` is an eigenvalue of `f` under a kind when
//! `f − b·E_n` is singular for that kind, and the eigenvectors are the
//! one-sided solutions `v ∘ f = v·b` / `f ∘ v = b·v`. The pair version
//! replaces `b·E_n` by `(g·b) ∘ g⁻¹` (rc) or `g⁻¹ ∘ (b·g)` (cr).
//!
//! *Left/right eigenvalues* of a matrix similar to a diagonal one, each
//! witnessed by an [`EigenPair`]:
//!
//! | side, kind | vector | equality |
//! |------------|--------|----------|
//! | left, rc | row | `v ∘ a = b·v` |
//! | right, rc | column | `a ∘ v = v·b` |
//! | left, cr | column | `v ∘ a = b·v` |
//! | right, cr | row | `a ∘ v = v·b` |
//!
//! Eigenvalue search is not provided; instances are built from an
//! invertible `u` and a diagonal `d`.

use crate::algebra::{Scalar, Tol};
use crate::biring::{inverse, is_singular, kernel, mul, mul3, row_rank, Kind, Matrix, Orientation, Side};
use crate::error::{Error, Result};

/// Candidate eigenvalue with its witnessing row or column.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<S> {
    pub value: S,
    pub vector: Matrix<S>,
    pub side: Side,
    pub kind: Kind,
}

/// `true` when the (side, kind) eigenvector is a column, `false` for a row.
pub fn uses_column(side: Side, kind: Kind) -> bool {
    matches!((side, kind), (Side::Right, Kind::Rc) | (Side::Left, Kind::Cr))
}

impl<S: Scalar> EigenPair<S> {
    pub fn new(value: S, vector: Matrix<S>, side: Side, kind: Kind) -> Self {
        EigenPair { value, vector, side, kind }
    }

    fn check_shape(&self, n: usize) -> Result<()> {
        let expected = if uses_column(self.side, self.kind) { (n, 1) } else { (1, n) };
        if self.vector.shape() != expected {
            return Err(Error::Shape {
                op: "eigen_check",
                left: (n, n),
                right: self.vector.shape(),
                kind: Some(self.kind),
            });
        }
        Ok(())
    }

    /// Both sides of the defining equality, `(lhs, rhs)`.
    pub fn sides(&self, a: &Matrix<S>) -> Result<(Matrix<S>, Matrix<S>)> {
        let n = a.require_square("eigen_check")?;
        self.check_shape(n)?;
        let v = &self.vector;
        Ok(match self.side {
            Side::Left => (mul(v, a, self.kind)?, v.scale_left(&self.value)),
            Side::Right => (mul(a, v, self.kind)?, v.scale_right(&self.value)),
        })
    }
}

/// Largest entry magnitude of `lhs − rhs` in the defining equality.
pub fn eigen_residual<S: Scalar>(a: &Matrix<S>, p: &EigenPair<S>) -> Result<f64> {
    let (lhs, rhs) = p.sides(a)?;
    lhs.distance(&rhs)
}

/// Whether `p` satisfies its defining equality against `a`: exactly for
/// exact scalars, to `ε·(1 + n‖a‖‖v‖ + ‖b‖‖v‖)` for float ones.
pub fn eigen_check<S: Scalar>(a: &Matrix<S>, p: &EigenPair<S>, tol: Tol) -> Result<bool> {
    if p.vector.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (lhs, rhs) = p.sides(a)?;
    let v = p.vector.max_magnitude();
    let scale = 1.0 + a.rows() as f64 * a.max_magnitude() * v + p.value.magnitude() * v;
    Ok(lhs.close_to(&rhs, tol, scale))
}

/// `f − b·E_n`.
pub fn shifted<S: Scalar>(f: &Matrix<S>, b: &S) -> Result<Matrix<S>> {
    let n = f.require_square("shift")?;
    f.sub(&Matrix::identity(n).scale_left(b))
}

/// `b` is an eigenvalue of `f` under `kind`: `f − b·E_n` is kind-singular.
pub fn is_matrix_eigenvalue<S: Scalar>(f: &Matrix<S>, b: &S, kind: Kind, tol: Tol) -> Result<bool> {
    Ok(is_singular(&shifted(f, b)?, kind, tol))
}

/// Basis of the eigenvectors of `f` for `b` with the row/column shape of
/// the (side, kind) eigenpair: solutions of `v ∘ f = v·b` (left) or
/// `f ∘ v = b·v` (right). Empty when `b` is not an eigenvalue.
///
/// The left solution sets are left vector spaces, the right ones right
/// vector spaces.
pub fn eigenspace<S: Scalar>(f: &Matrix<S>, b: &S, side: Side, kind: Kind, tol: Tol) -> Result<Vec<Matrix<S>>> {
    let m = shifted(f, b)?;
    let orientation = match side {
        Side::Left => Orientation::VectorOnLeft,
        Side::Right => Orientation::VectorOnRight,
    };
    Ok(kernel(&m, orientation, kind, tol))
}

/// Pair of square matrices `(f, g)` with `g` nonsingular.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpec<S> {
    pub f: Matrix<S>,
    pub g: Matrix<S>,
}

impl<S: Scalar> PairSpec<S> {
    pub fn new(f: Matrix<S>, g: Matrix<S>) -> Result<Self> {
        let n = f.require_square("pair")?;
        if g.shape() != (n, n) {
            return Err(Error::Shape { op: "pair", left: f.shape(), right: g.shape(), kind: None });
        }
        Ok(PairSpec { f, g })
    }

    /// The matrix that replaces `b·E_n` for this pair: `(g·b) ∘ g⁻¹` (rc)
    /// or `g⁻¹ ∘ (b·g)` (cr). Entries of `g·b` are right-multiplied by
    /// `b`, entries of `b·g` left-multiplied.
    pub fn scalar_image(&self, b: &S, kind: Kind, tol: Tol) -> Result<Matrix<S>> {
        let g_inv = inverse(&self.g, kind, tol)?;
        match kind {
            Kind::Rc => mul(&self.g.scale_right(b), &g_inv, kind),
            Kind::Cr => mul(&g_inv, &self.g.scale_left(b), kind),
        }
    }

    /// `f` minus [`scalar_image`](Self::scalar_image).
    pub fn pair_matrix(&self, b: &S, kind: Kind, tol: Tol) -> Result<Matrix<S>> {
        self.f.sub(&self.scalar_image(b, kind, tol)?)
    }
}

/// `b` is an eigenvalue of the pair: [`PairSpec::pair_matrix`] is kind-singular.
/// Fails when `g` is singular.
pub fn pair_eigen_check<S: Scalar>(pair: &PairSpec<S>, b: &S, kind: Kind, tol: Tol) -> Result<bool> {
    Ok(is_singular(&pair.pair_matrix(b, kind, tol)?, kind, tol))
}

/// `u ∘ a ∘ u⁻¹` (left) or `u⁻¹ ∘ a ∘ u` (right) under `kind`.
pub fn conjugate_by<S: Scalar>(a: &Matrix<S>, u: &Matrix<S>, kind: Kind, side: Side, tol: Tol) -> Result<Matrix<S>> {
    a.require_square("conjugate_by")?;
    let u_inv = inverse(u, kind, tol)?;
    match side {
        Side::Left => mul3(u, a, &u_inv, kind),
        Side::Right => mul3(&u_inv, a, u, kind),
    }
}

/// Failure of [`diagonalize_via`].
#[derive(Debug, Clone, PartialEq)]
pub enum DiagonalizeError<S> {
    /// Shape problem or singular `u`.
    Precondition(Error),
    /// The conjugated matrix is not diagonal; it is returned as the residual.
    NotDiagonal { residual: Matrix<S> },
}

impl<S> From<Error> for DiagonalizeError<S> {
    fn from(e: Error) -> Self {
        DiagonalizeError::Precondition(e)
    }
}

/// Conjugates `a` by `u` as in [`conjugate_by`] and requires the result to
/// be diagonal.
pub fn diagonalize_via<S: Scalar>(
    a: &Matrix<S>,
    u: &Matrix<S>,
    kind: Kind,
    side: Side,
    tol: Tol,
) -> Result<Matrix<S>, DiagonalizeError<S>> {
    if u.shape() != a.shape() {
        return Err(Error::Shape { op: "diagonalize_via", left: a.shape(), right: u.shape(), kind: Some(kind) }.into());
    }
    let d = conjugate_by(a, u, kind, side, tol)?;
    let scale = 1.0 + a.max_magnitude() * u.max_magnitude() * u.max_magnitude();
    if d.is_diagonal(tol, scale) {
        Ok(d)
    } else {
        Err(DiagonalizeError::NotDiagonal { residual: d })
    }
}

/// Inverse of [`diagonalize_via`]: the matrix `a` that `u` conjugates into
/// `diag(d)` for the given side.
pub fn from_diagonal<S: Scalar>(u: &Matrix<S>, d: &[S], kind: Kind, side: Side, tol: Tol) -> Result<Matrix<S>> {
    let n = u.require_square("from_diagonal")?;
    if d.len() != n {
        return Err(Error::Shape { op: "from_diagonal", left: u.shape(), right: (d.len(), d.len()), kind: Some(kind) });
    }
    let opposite = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    conjugate_by(&Matrix::diag(d), u, kind, opposite, tol)
}

/// Eigenpairs of `from_diagonal(u, d, kind, side)` read off `u`: rows of
/// `u` for left rc and right cr, columns for right rc and left cr.
pub fn eigenpairs_of<S: Scalar>(u: &Matrix<S>, d: &[S], kind: Kind, side: Side) -> Vec<EigenPair<S>> {
    let n = u.rows();
    (0..n)
        .map(|i| {
            let vector = if uses_column(side, kind) {
                Matrix::column_vector(u.column(i))
            } else {
                Matrix::row_vector(u.row(i).to_vec())
            };
            EigenPair::new(d[i].clone(), vector, side, kind)
        })
        .collect()
}

/// The `g` for which every eigenvalue read off `(u, d)` is an eigenvalue of
/// the pair `(a, g)`: `u⁻¹` for left rc and right cr, `u` otherwise.
pub fn pair_basis<S: Scalar>(u: &Matrix<S>, kind: Kind, side: Side, tol: Tol) -> Result<Matrix<S>> {
    if uses_column(side, kind) {
        Ok(u.clone())
    } else {
        inverse(u, kind, tol)
    }
}

/// Transformed pair: value `c·b·c⁻¹` with vector `c·v` on the left,
/// value `c⁻¹·b·c` with vector `v·c` on the right.
pub fn conjugate_eigen<S: Scalar>(p: &EigenPair<S>, c: &S) -> Result<EigenPair<S>> {
    let c_inv = c.inv().ok_or(Error::ZeroScalar)?;
    Ok(match p.side {
        Side::Left => EigenPair::new(c.clone() * p.value.clone() * c_inv, p.vector.scale_left(c), p.side, p.kind),
        Side::Right => EigenPair::new(c_inv * p.value.clone() * c.clone(), p.vector.scale_right(c), p.side, p.kind),
    })
}

/// Whether the vector scaled on the non-conjugating side (`v·c` left,
/// `c·v` right) is still an eigenvector for the same value.
pub fn scaling_preserves<S: Scalar>(p: &EigenPair<S>, c: &S, a: &Matrix<S>, tol: Tol) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let vector = match p.side {
        Side::Left => p.vector.scale_right(c),
        Side::Right => p.vector.scale_left(c),
    };
    eigen_check(a, &EigenPair::new(p.value.clone(), vector, p.side, p.kind), tol)
}

/// `c` commutes with every entry of `a`.
pub fn commutes_with_entries<S: Scalar>(c: &S, a: &Matrix<S>, tol: Tol) -> bool {
    a.iter().all(|x| crate::algebra::in_center(c, x, tol))
}

/// No nontrivial `Σ a_i·v_i = 0` (left) or `Σ v_i·a_i = 0` (right).
/// Vectors must share one shape; an empty list is independent.
pub fn independent<S: Scalar>(vectors: &[Matrix<S>], side: Side, tol: Tol) -> Result<bool> {
    let Some(first) = vectors.first() else {
        return Ok(true);
    };
    if let Some(bad) = vectors.iter().find(|v| v.shape() != first.shape()) {
        return Err(Error::Shape { op: "independent", left: first.shape(), right: bad.shape(), kind: None });
    }
    let len = first.rows() * first.cols();
    let stacked = Matrix::from_fn(vectors.len(), len, |i, j| vectors[i].iter().nth(j).cloned().expect("in range"));
    Ok(row_rank(&stacked, side, tol) == vectors.len())
}

/// Matrix of an endomorphism after the passive transformation `g`:
/// `g ∘ f ∘ g⁻¹` for left spaces, `g⁻¹ ∘ f ∘ g` for right spaces.
pub fn basis_change_endo<S: Scalar>(
    f: &Matrix<S>,
    g: &Matrix<S>,
    kind: Kind,
    space_side: Side,
    tol: Tol,
) -> Result<Matrix<S>> {
    conjugate_by(f, g, kind, space_side, tol)
}

/// Matrix `(g·b) ∘ g⁻¹` of the similarity transformation `E_n·b` after the
/// basis change `g`.
pub fn similarity_matrix<S: Scalar>(g: &Matrix<S>, b: &S, kind: Kind, tol: Tol) -> Result<Matrix<S>> {
    g.require_square("similarity_matrix")?;
    let g_inv = inverse(g, kind, tol)?;
    mul(&g.scale_right(b), &g_inv, kind)
}

/// One verified eigenpair of a [`SpectrumReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry<S> {
    pub pair: EigenPair<S>,
    pub residual: f64,
    /// `a − b·E_n` is kind-singular.
    pub matrix_singular: bool,
    /// `b` is an eigenvalue of the pair `(a, pair_basis(u))`.
    pub pair_singular: bool,
}

/// Left or right spectrum of the matrix built from `(u, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<S> {
    pub matrix: Matrix<S>,
    pub kind: Kind,
    pub side: Side,
    pub entries: Vec<SpectrumEntry<S>>,
}

/// Builds `a` from `(u, d)` for the given side and kind, then verifies
/// every eigenpair read off `u`.
pub fn spectrum<S: Scalar>(u: &Matrix<S>, d: &[S], kind: Kind, side: Side, tol: Tol) -> Result<SpectrumReport<S>> {
    let a = from_diagonal(u, d, kind, side, tol)?;
    let pair = PairSpec::new(a.clone(), pair_basis(u, kind, side, tol)?)?;
    let mut entries = Vec::with_capacity(d.len());
    for p in eigenpairs_of(u, d, kind, side) {
        if !eigen_check(&a, &p, tol)? {
            return Err(Error::Invalid(format!("eigenpair for {:?} failed verification", p.value)));
        }
        let residual = eigen_residual(&a, &p)?;
        let matrix_singular = is_matrix_eigenvalue(&a, &p.value, kind, tol)?;
        let pair_singular = pair_eigen_check(&pair, &p.value, kind, tol)?;
        entries.push(SpectrumEntry { pair: p, residual, matrix_singular, pair_singular });
    }
    Ok(SpectrumReport { matrix: a, kind, side, entries })
}
