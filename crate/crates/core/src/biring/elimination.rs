//! Gaussian elimination over a division algebra.
//!
//! Rows are combined with scalars acting on one fixed side. With
//! [`Side::Left`] the reduction solves `Σ_k m_ik·x_k = r_i` (unknowns to the
//! right of their coefficients); with [`Side::Right`] it solves
//! `Σ_k x_k·m_ik = r_i`, which is the same computation in the opposite
//! algebra.

use super::{Matrix, Side};
use crate::algebra::{Scalar, Tol};

/// Reduced row echelon form: pivot entries are 1 and pivot columns are
/// zero outside their pivot row.
pub(crate) struct Echelon<S> {
    pub reduced: Matrix<S>,
    /// `pivots[r]` is the pivot column of row `r`.
    pub pivots: Vec<usize>,
}

fn mul_side<S: Scalar>(side: Side, s: &S, x: &S) -> S {
    match side {
        Side::Left => s.clone() * x.clone(),
        Side::Right => x.clone() * s.clone(),
    }
}

/// Row reduces `m`, choosing pivots only among the first `coeff_cols`
/// columns (the remaining columns are carried along as right-hand sides).
///
/// Exact scalars take the first nonzero entry as pivot. Float scalars take
/// the largest magnitude and treat an entry as zero when it is below
/// `eps` times the largest coefficient magnitude of its original row.
pub(crate) fn row_reduce<S: Scalar>(mut m: Matrix<S>, coeff_cols: usize, side: Side, tol: Tol) -> Echelon<S> {
    let (rows, cols) = m.shape();
    let mut row_scale: Vec<f64> =
        (0..rows).map(|i| m.row(i)[..coeff_cols].iter().map(S::magnitude).fold(0.0, f64::max)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..coeff_cols {
        if r == rows {
            break;
        }
        let candidate = if S::EXACT {
            (r..rows).find(|&i| !m[(i, c)].is_zero())
        } else {
            (r..rows)
                .filter(|&i| !m[(i, c)].is_negligible(tol, row_scale[i]))
                .max_by(|&a, &b| m[(a, c)].magnitude().total_cmp(&m[(b, c)].magnitude()))
        };
        let Some(p) = candidate else {
            if !S::EXACT {
                for i in r..rows {
                    m[(i, c)] = S::zero();
                }
            }
            continue;
        };
        m.swap_rows(r, p);
        row_scale.swap(r, p);

        let inv = m[(r, c)].inv().expect("pivot is nonzero");
        for j in 0..cols {
            m[(r, j)] = mul_side(side, &inv, &m[(r, j)]);
        }
        m[(r, c)] = S::one();

        for i in (0..rows).filter(|&i| i != r) {
            let factor = m[(i, c)].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..cols {
                let delta = mul_side(side, &factor, &m[(r, j)]);
                m[(i, j)] = m[(i, j)].clone() - delta;
            }
            m[(i, c)] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: m, pivots }
}

/// Number of rows of `m` that are independent when combined with scalars
/// on `side`.
pub fn row_rank<S: Scalar>(m: &Matrix<S>, side: Side, tol: Tol) -> usize {
    row_reduce(m.clone(), m.cols(), side, tol).pivots.len()
}

/// Solution of `Σ_k m_ik·x_k = rhs_i` (side Left) or `Σ_k x_k·m_ik = rhs_i`
/// (side Right): a particular solution and a kernel basis, or `None` when
/// inconsistent.
pub(crate) fn solve_system<S: Scalar>(m: &Matrix<S>, rhs: &[S], side: Side, tol: Tol) -> Option<(Vec<S>, Vec<Vec<S>>)> {
    let (rows, n) = m.shape();
    let aug = Matrix::from_fn(rows, n + 1, |i, j| if j < n { m[(i, j)].clone() } else { rhs[i].clone() });
    let rhs_scale: Vec<f64> = (0..rows).map(|i| aug.row(i).iter().map(S::magnitude).fold(0.0, f64::max)).collect();
    let Echelon { reduced, pivots } = row_reduce(aug, n, side, tol);

    // Rows past the last pivot must have a vanishing right-hand side. The
    // reduction permutes rows, so the original scale is not tracked here;
    // the largest original scale bounds it.
    let scale = rhs_scale.iter().copied().fold(1.0, f64::max);
    if (pivots.len()..rows).any(|i| !reduced[(i, n)].is_negligible(tol, scale)) {
        return None;
    }

    let mut particular = vec![S::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = reduced[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -reduced[(r, f)].clone();
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalQuaternion as Q;

    #[test]
    fn left_and_right_rank_differ_over_quaternions() {
        // (j, k) = j·(1, i) is false, (j, k) = (1, i)·j is true.
        let m = Matrix::from_rows(vec![vec![Q::one(), Q::i()], vec![Q::j(), Q::k()]]).unwrap();
        assert_eq!(row_rank(&m, Side::Left, Tol::default()), 2);
        assert_eq!(row_rank(&m, Side::Right, Tol::default()), 1);
    }

    #[test]
    fn float_near_zero_row_is_dropped() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-13]]).unwrap();
        assert_eq!(row_rank(&m, Side::Left, Tol::default()), 1);
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-6]]).unwrap();
        assert_eq!(row_rank(&m, Side::Left, Tol::default()), 2);
    }
}
