//! Seeded random instances for property checks.
//!
//! Everything takes an explicit RNG; [`rng`] builds a ChaCha8 stream from a
//! `u64` seed so runs are reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FloatQuaternion, Quaternion, Rational, RationalQuaternion, Scalar, Tol};
use crate::biring::{is_singular, Kind, Matrix};
use crate::eigen::from_diagonal;
use crate::ode::LinearSystem;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scalars that can be drawn at random.
pub trait Sample: Scalar {
    /// A generic element; may be zero.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// An element of the real line.
    fn sample_real<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into())
}

impl Sample for RationalQuaternion {
    /// Coefficients in `{-3, …, 3}/{1, 2}`.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Quaternion::new(small_rational(rng), small_rational(rng), small_rational(rng), small_rational(rng))
    }
    fn sample_real<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Quaternion::real(small_rational(rng))
    }
}

impl Sample for FloatQuaternion {
    /// Coefficients uniform in `[-1, 1]`, so the norm is at most 2.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Quaternion::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        )
    }
    fn sample_real<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Quaternion::real(rng.gen_range(-1.0..=1.0))
    }
}

impl Sample for Rational {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng)
    }
    fn sample_real<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng)
    }
}

impl Sample for f64 {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen_range(-2.0..=2.0)
    }
    fn sample_real<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen_range(-2.0..=2.0)
    }
}

pub fn nonzero<S: Sample, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let s = S::sample(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Nonzero and not real.
pub fn non_real<S: Sample, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let s = S::sample(rng);
        if !s.is_real() {
            return s;
        }
    }
}

pub fn matrix<S: Sample, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| S::sample(rng))
}

pub fn real_matrix<S: Sample, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| S::sample_real(rng))
}

/// Random square matrix that is nonsingular under `kind`.
pub fn invertible<S: Sample, R: Rng + ?Sized>(rng: &mut R, n: usize, kind: Kind, tol: Tol) -> Matrix<S> {
    loop {
        let m = matrix(rng, n, n);
        if !is_singular(&m, kind, tol) {
            return m;
        }
    }
}

/// Nonsingular matrix with real entries.
pub fn invertible_real<S: Sample, R: Rng + ?Sized>(rng: &mut R, n: usize, tol: Tol) -> Matrix<S> {
    loop {
        let m = real_matrix(rng, n, n);
        if !is_singular(&m, Kind::Rc, tol) {
            return m;
        }
    }
}

/// Data `(u, d)` of a matrix similar to `diag(d)`: `u` nonsingular under
/// `kind`, `d` nonzero non-real diagonal.
pub fn diagonal_data<S: Sample, R: Rng + ?Sized>(rng: &mut R, n: usize, kind: Kind, tol: Tol) -> (Matrix<S>, Vec<S>) {
    let u = invertible(rng, n, kind, tol);
    let d = (0..n).map(|_| non_real(rng)).collect();
    (u, d)
}

/// A constructed diagonalizable instance with its data.
pub struct Diagonalizable<S> {
    pub a: Matrix<S>,
    pub u: Matrix<S>,
    pub d: Vec<S>,
}

pub fn diagonalizable<S: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    kind: Kind,
    side: crate::biring::Side,
    tol: Tol,
) -> Diagonalizable<S> {
    let (u, d) = diagonal_data(rng, n, kind, tol);
    let a = from_diagonal(&u, &d, kind, side, tol).expect("u is nonsingular");
    Diagonalizable { a, u, d }
}

/// Instances of `dx/dt = x ∘ a` with a known eigen datum.
pub mod ode {
    use super::*;

    type Q = FloatQuaternion;

    /// Unit pure quaternion.
    pub fn unit_axis<R: Rng + ?Sized>(rng: &mut R) -> Q {
        loop {
            let v = Q::sample(rng).imag();
            let n = v.magnitude();
            if n > 0.1 {
                return v.scale_by(&(1.0 / n));
            }
        }
    }

    /// `α + β·axis` with `α, β ∈ [-s, s]`.
    fn in_plane<R: Rng + ?Sized>(rng: &mut R, axis: &Q, s: f64) -> Q {
        Q::real(rng.gen_range(-s..=s)) + axis.scale_by(&rng.gen_range(-s..=s))
    }

    fn nonzero_in_plane<R: Rng + ?Sized>(rng: &mut R, axis: &Q) -> Q {
        loop {
            let z = in_plane(rng, axis, 1.0);
            if z.magnitude() > 0.2 {
                return z;
            }
        }
    }

    /// Value with small real part so exponentials stay bounded on `[0, 2]`.
    fn value<R: Rng + ?Sized>(rng: &mut R, axis: &Q) -> Q {
        Q::real(rng.gen_range(-0.3..=0.3)) + axis.scale_by(&rng.gen_range(0.5..=1.5))
    }

    /// `a = b·E + N` with `c' ∘ N = 0`; `N` is arbitrary outside its first
    /// column, which is solved for.
    fn assemble(b: &Q, c_prime: &[Q], mut fill: impl FnMut() -> Q) -> Matrix<Q> {
        let n = c_prime.len();
        let mut nm = Matrix::from_fn(n, n, |_, k| if k == 0 { Q::zero() } else { fill() });
        let lead_inv = c_prime[0].inv().expect("nonzero lead");
        for i in 0..n {
            let s = (1..n).fold(Q::zero(), |acc, k| acc + c_prime[k].clone() * nm[(i, k)].clone());
            nm[(i, 0)] = -(lead_inv.clone() * s);
        }
        nm.add(&Matrix::identity(n).scale_left(b)).expect("same shape")
    }

    pub struct RightExpInstance {
        pub sys: LinearSystem<Q>,
        pub b: Q,
        pub c: Vec<Q>,
    }

    /// Every entry of `a` and `b` lie in one plane `span{1, axis}`, so `b`
    /// commutes with `a`.
    pub fn center_instance<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RightExpInstance {
        let axis = unit_axis(rng);
        let b = value(rng, &axis);
        let c_prime: Vec<Q> = (0..n).map(|_| nonzero_in_plane(rng, &axis)).collect();
        let a = assemble(&b, &c_prime, || in_plane(rng, &axis, 0.5));
        let p = nonzero::<Q, _>(rng);
        let c = c_prime.iter().map(|z| p.clone() * z.clone()).collect();
        RightExpInstance { sys: LinearSystem::new(a).expect("square"), b, c }
    }

    /// `c = p·c'` with `c'` in the plane of `b`; the entries of `a` are generic.
    pub fn eigencolumn_instance<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RightExpInstance {
        let axis = unit_axis(rng);
        let b = value(rng, &axis);
        let c_prime: Vec<Q> = (0..n).map(|_| nonzero_in_plane(rng, &axis)).collect();
        let a = assemble(&b, &c_prime, || Q::sample(rng).scale_by(&0.5));
        let p = nonzero::<Q, _>(rng);
        let c = c_prime.iter().map(|z| p.clone() * z.clone()).collect();
        RightExpInstance { sys: LinearSystem::new(a).expect("square"), b, c }
    }

    /// `c ∘ a = c·b` holds but `b` meets neither commutation condition
    /// (with probability one); `n ≥ 2`.
    pub fn violating_instance<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RightExpInstance {
        assert!(n >= 2, "a violating instance needs n ≥ 2");
        let axis = unit_axis(rng);
        let b = value(rng, &axis);
        let c: Vec<Q> = (0..n).map(|_| nonzero::<Q, _>(rng)).collect();
        let a = assemble(&b, &c, || Q::sample(rng));
        RightExpInstance { sys: LinearSystem::new(a).expect("square"), b, c }
    }

    /// `a` built from `(u, d)` for left cr eigenvalues; returns the datum of
    /// column `k` of `u`.
    pub fn left_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, tol: Tol) -> RightExpInstance {
        let u: Matrix<Q> = invertible(rng, n, Kind::Cr, tol);
        let d: Vec<Q> = (0..n)
            .map(|_| {
                let axis = unit_axis(rng);
                value(rng, &axis)
            })
            .collect();
        let a = from_diagonal(&u, &d, Kind::Cr, crate::biring::Side::Left, tol).expect("u is nonsingular");
        let k = rng.gen_range(0..n);
        RightExpInstance { sys: LinearSystem::new(a).expect("square"), b: d[k].clone(), c: u.column(k) }
    }
}
