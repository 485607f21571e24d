use std::ops::{Index, IndexMut};

use crate::algebra::{Scalar, Tol};
use crate::error::{Error, Result};

/// Dense matrix. Entry `(i, j)` is row `i`, column `j`, i.e. `a^i_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>, // row-major
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from its rows; all rows must have the same positive length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::Invalid("matrix must have at least one row and one column".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return Err(Error::Invalid(format!("row {bad} has {} entries, expected {m}", rows[bad].len())));
        }
        Ok(Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { op, rows: self.rows, cols: self.cols })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Copy with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// `n×1` column matrix.
    pub fn column_vector(entries: Vec<T>) -> Self {
        Matrix { rows: entries.len(), cols: 1, data: entries }
    }

    /// `1×n` row matrix.
    pub fn row_vector(entries: Vec<T>) -> Self {
        Matrix { rows: 1, cols: entries.len(), data: entries }
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    /// `E_n`, the common identity of both products.
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(entries: &[S]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
    }

    /// Standard basis column `e_k` of length `n`.
    pub fn basis_column(n: usize, k: usize) -> Self {
        Matrix::from_fn(n, 1, |i, _| if i == k { S::one() } else { S::zero() })
    }

    /// Standard basis row `e^k` of length `n`.
    pub fn basis_row(n: usize, k: usize) -> Self {
        Matrix::from_fn(1, n, |_, j| if j == k { S::one() } else { S::zero() })
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape { op, left: self.shape(), right: other.shape(), kind: None });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    /// `b·M`: every entry multiplied by `b` on the left.
    pub fn scale_left(&self, b: &S) -> Self {
        self.map(|a| b.clone() * a.clone())
    }

    /// `M·b`: every entry multiplied by `b` on the right.
    pub fn scale_right(&self, b: &S) -> Self {
        self.map(|a| a.clone() * b.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self − other`; shapes must agree.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_magnitude())
    }

    /// Entrywise equality under the mode, relative to `scale`.
    pub fn close_to(&self, other: &Self, tol: Tol, scale: f64) -> bool {
        self.shape() == other.shape() && self.data.iter().zip(&other.data).all(|(a, b)| a.close_to(b, tol, scale))
    }

    /// Largest off-diagonal magnitude.
    pub fn off_diagonal_magnitude(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in (0..self.cols).filter(|&j| j != i) {
                m = m.max(self[(i, j)].magnitude());
            }
        }
        m
    }

    pub fn is_diagonal(&self, tol: Tol, scale: f64) -> bool {
        (0..self.rows).all(|i| (0..self.cols).filter(|&j| j != i).all(|j| self[(i, j)].is_negligible(tol, scale)))
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// `true` when every entry commutes with everything.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(S::is_real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ragged_rows_are_rejected() {
        let r = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]);
        assert!(matches!(r, Err(Error::Invalid(_))));
        assert!(Matrix::<f64>::from_rows(vec![]).is_err());
    }

    #[test]
    fn minor_drops_row_and_column() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0], vec![7.0, 8.0, 9.0]]).unwrap();
        let m = a.minor(1, 0);
        assert_eq!(m, Matrix::from_rows(vec![vec![2.0, 3.0], vec![8.0, 9.0]]).unwrap());
    }

    #[test]
    fn scalar_sides_differ_for_quaternions() {
        use crate::algebra::RationalQuaternion as Q;
        let m = Matrix::diag(&[Q::i(), Q::one()]);
        let j = Q::j();
        assert_eq!(m.scale_left(&j)[(0, 0)], -Q::k());
        assert_eq!(m.scale_right(&j)[(0, 0)], Q::k());
    }
}
