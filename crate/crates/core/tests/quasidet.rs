use biring::algebra::{Rational, RationalQuaternion as Q, Scalar, Tol};
use biring::biring::{inverse, Kind, Matrix};
use biring::gen;
use biring::quasidet::{quasidet, quasidet_matrix, QuasidetIndex};
use biring::Error;
use rand::Rng;

// Laplace expansion along the first row.
fn det(m: &Matrix<Rational>) -> Rational {
    if m.rows() == 0 {
        return Rational::from_integer(1.into());
    }
    (0..m.cols()).fold(Rational::zero(), |acc, j| {
        let term = &m[(0, j)] * det(&m.minor(0, j));
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

#[test]
fn real_matrices_reduce_to_determinant_ratios() {
    let mut rng = gen::rng(13);
    let tol = Tol::default();
    let mut defined = 0;
    for _ in 0..120 {
        let n = rng.gen_range(1..=4);
        let a: Matrix<Rational> = gen::invertible_real(&mut rng, n, tol);
        let d = det(&a);
        assert!(!d.is_zero());
        for i in 0..n {
            for j in 0..n {
                // (a⁻¹)^i_j = (−1)^{i+j} det(a without row j, column i) / det a
                let cof = det(&a.minor(j, i));
                let sign = if (i + j) % 2 == 0 {
                    Rational::from_integer(1.into())
                } else {
                    Rational::from_integer((-1).into())
                };
                for kind in [Kind::Rc, Kind::Cr] {
                    let q = quasidet(&a, QuasidetIndex::new(i, j), kind, tol);
                    if cof.is_zero() {
                        assert!(matches!(q, Err(Error::UndefinedQuasideterminant { .. })), "{q:?}");
                    } else {
                        defined += 1;
                        assert_eq!(q.unwrap(), &sign * &d / &cof);
                    }
                }
            }
        }
    }
    assert!(defined > 500);
}

#[test]
fn quaternion_quasidets_invert_inverse_entries() {
    let mut rng = gen::rng(14);
    let tol = Tol::default();
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        for kind in [Kind::Rc, Kind::Cr] {
            let a: Matrix<Q> = gen::invertible(&mut rng, n, kind, tol);
            let inv = inverse(&a, kind, tol).unwrap();
            let qm = quasidet_matrix(&a, kind, tol).unwrap();
            for i in 0..n {
                for j in 0..n {
                    match &qm[(i, j)] {
                        Some(q) => assert_eq!(q.clone() * inv[(i, j)].clone(), Q::one()),
                        None => assert!(inv[(i, j)].is_zero()),
                    }
                }
            }
        }
    }
}

#[test]
fn cr_quasidet_is_rc_of_transpose() {
    let mut rng = gen::rng(15);
    let tol = Tol::default();
    for _ in 0..40 {
        let n = rng.gen_range(2..=3);
        let a: Matrix<Q> = gen::matrix(&mut rng, n, n);
        for i in 0..n {
            for j in 0..n {
                let cr = quasidet(&a, QuasidetIndex::new(i, j), Kind::Cr, tol).ok();
                let rc = quasidet(&a.transpose(), QuasidetIndex::new(j, i), Kind::Rc, tol).ok();
                assert_eq!(cr, rc);
            }
        }
    }
}

#[test]
fn one_by_one_and_undefined_entries() {
    let tol = Tol::default();
    let a = Matrix::from_rows(vec![vec![Q::from_ints(1, 2, 0, 0)]]).unwrap();
    assert_eq!(quasidet(&a, QuasidetIndex::new(0, 0), Kind::Rc, tol).unwrap(), Q::from_ints(1, 2, 0, 0));
    let e: Matrix<Q> = Matrix::identity(2);
    let qm = quasidet_matrix(&e, Kind::Cr, tol).unwrap();
    assert_eq!(qm[(0, 0)], Some(Q::one()));
    assert_eq!(qm[(0, 1)], None);
    assert!(quasidet(&e, QuasidetIndex::new(2, 0), Kind::Rc, tol).is_err());
}
