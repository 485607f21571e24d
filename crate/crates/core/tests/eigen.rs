use biring::algebra::{RationalQuaternion as Q, Scalar, Tol};
use biring::biring::{is_singular, mul, Kind, Matrix, Side};
use biring::eigen::{self, DiagonalizeError, EigenPair, PairSpec};
use biring::gen::{self, Sample};
use rand::Rng;

const KINDS: [Kind; 2] = [Kind::Rc, Kind::Cr];
const SIDES: [Side; 2] = [Side::Left, Side::Right];

fn tol() -> Tol {
    Tol::default()
}

fn one_by_one(q: Q) -> Matrix<Q> {
    Matrix::from_rows(vec![vec![q]]).unwrap()
}

#[test]
fn left_eigenrows_are_not_a_left_subspace() {
    // a = (−i): j·a = k = i·j, so (i, j) is a left rc eigenpair
    let a = one_by_one(-Q::i());
    let p = EigenPair::new(Q::i(), Matrix::row_vector(vec![Q::j()]), Side::Left, Kind::Rc);
    assert!(eigen::eigen_check(&a, &p, tol()).unwrap());
    // scaling by j on the left leaves the eigenvalue i behind
    let scaled = EigenPair::new(Q::i(), p.vector.scale_left(&Q::j()), Side::Left, Kind::Rc);
    assert!(!eigen::eigen_check(&a, &scaled, tol()).unwrap());
    // it lands on the conjugated value j·i·j⁻¹ instead
    let moved = eigen::conjugate_eigen(&p, &Q::j()).unwrap();
    assert_eq!(moved.vector, scaled.vector);
    assert_eq!(moved.value, -Q::i());
    assert!(eigen::eigen_check(&a, &moved, tol()).unwrap());
    // yet a − i·E is invertible
    assert!(!eigen::is_matrix_eigenvalue(&a, &Q::i(), Kind::Rc, tol()).unwrap());
}

#[test]
fn constructed_instances_round_trip() {
    let mut rng = gen::rng(31);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        for kind in KINDS {
            for side in SIDES {
                let inst: gen::Diagonalizable<Q> = gen::diagonalizable(&mut rng, n, kind, side, tol());
                let d = eigen::diagonalize_via(&inst.a, &inst.u, kind, side, tol()).unwrap();
                assert_eq!(d, Matrix::diag(&inst.d));
                for p in eigen::eigenpairs_of(&inst.u, &inst.d, kind, side) {
                    assert_eq!(eigen::eigen_residual(&inst.a, &p).unwrap(), 0.0);
                    let shape = if eigen::uses_column(side, kind) { (n, 1) } else { (1, n) };
                    assert_eq!(p.vector.shape(), shape);
                }
            }
        }
    }
}

#[test]
fn wrong_basis_is_reported_with_residual() {
    let a = Matrix::from_rows(vec![vec![Q::one(), Q::i()], vec![Q::zero(), Q::j()]]).unwrap();
    match eigen::diagonalize_via(&a, &Matrix::identity(2), Kind::Rc, Side::Right, tol()) {
        Err(DiagonalizeError::NotDiagonal { residual }) => assert_eq!(residual[(0, 1)], Q::i()),
        other => panic!("{other:?}"),
    }
    let singular = Matrix::from_rows(vec![vec![Q::one(), Q::one()], vec![Q::one(), Q::one()]]).unwrap();
    assert!(matches!(
        eigen::diagonalize_via(&a, &singular, Kind::Rc, Side::Left, tol()),
        Err(DiagonalizeError::Precondition(_))
    ));
}

#[test]
fn pair_matrices_are_singular_for_constructed_values() {
    let mut rng = gen::rng(32);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let kind = KINDS[rng.gen_range(0..2)];
        let side = SIDES[rng.gen_range(0..2)];
        let (u, d) = gen::diagonal_data::<Q, _>(&mut rng, n, kind, tol());
        let a = eigen::from_diagonal(&u, &d, kind, side, tol()).unwrap();
        let g = eigen::pair_basis(&u, kind, side, tol()).unwrap();
        let pair = PairSpec::new(a, g).unwrap();
        for b in &d {
            assert!(eigen::pair_eigen_check(&pair, b, kind, tol()).unwrap());
            assert!(is_singular(&pair.pair_matrix(b, kind, tol()).unwrap(), kind, tol()));
        }
    }
}

#[test]
fn real_basis_makes_similarity_scalar() {
    let mut rng = gen::rng(33);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let g: Matrix<Q> = gen::invertible_real(&mut rng, n, tol());
        let b = Q::sample(&mut rng);
        for kind in KINDS {
            let s = eigen::similarity_matrix(&g, &b, kind, tol()).unwrap();
            assert_eq!(s, Matrix::identity(n).scale_left(&b));
        }
    }
}

#[test]
fn similarity_matrix_depends_on_basis() {
    let g = Matrix::from_rows(vec![vec![Q::one(), Q::j()], vec![Q::zero(), Q::one()]]).unwrap();
    let s = eigen::similarity_matrix(&g, &Q::i(), Kind::Rc, tol()).unwrap();
    assert_ne!(s, Matrix::identity(2).scale_left(&Q::i()));
    assert!(!eigen::shifted(&s, &Q::i()).unwrap().is_zero());
}

#[test]
fn basis_change_round_trip() {
    let mut rng = gen::rng(34);
    for kind in KINDS {
        for side in SIDES {
            let f: Matrix<Q> = gen::matrix(&mut rng, 3, 3);
            let g: Matrix<Q> = gen::invertible(&mut rng, 3, kind, tol());
            let g_inv = biring::biring::inverse(&g, kind, tol()).unwrap();
            let moved = eigen::basis_change_endo(&f, &g, kind, side, tol()).unwrap();
            assert_eq!(eigen::basis_change_endo(&moved, &g_inv, kind, side, tol()).unwrap(), f);
        }
    }
}

#[test]
fn eigenspaces_are_closed_under_their_scalar_action() {
    let mut rng = gen::rng(35);
    let mut nontrivial = 0;
    for _ in 0..30 {
        let n = 3;
        let kind = KINDS[rng.gen_range(0..2)];
        // b·E + low-rank part, so b is an eigenvalue
        let b: Q = gen::non_real(&mut rng);
        let x: Matrix<Q> = gen::matrix(&mut rng, n, 1);
        let y: Matrix<Q> = gen::matrix(&mut rng, 1, n);
        let low = match kind {
            Kind::Rc => mul(&x, &y, kind).unwrap(),
            Kind::Cr => mul(&y, &x, kind).unwrap(),
        };
        let f = low.add(&Matrix::identity(n).scale_left(&b)).unwrap();
        assert!(eigen::is_matrix_eigenvalue(&f, &b, kind, tol()).unwrap());
        for side in SIDES {
            let space = eigen::eigenspace(&f, &b, side, kind, tol()).unwrap();
            assert!(!space.is_empty());
            nontrivial += 1;
            let c: Q = gen::nonzero(&mut rng);
            let shifted = eigen::shifted(&f, &b).unwrap();
            for v in &space {
                let w = match side {
                    Side::Left => v.scale_left(&c),
                    Side::Right => v.scale_right(&c),
                };
                let p = match side {
                    Side::Left => mul(&w, &shifted, kind).unwrap(),
                    Side::Right => mul(&shifted, &w, kind).unwrap(),
                };
                assert!(p.is_zero());
            }
        }
    }
    assert_eq!(nontrivial, 60);
}

#[test]
fn independence_of_constructed_eigenvectors() {
    let mut rng = gen::rng(36);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let kind = KINDS[rng.gen_range(0..2)];
        let side = SIDES[rng.gen_range(0..2)];
        let (u, d) = gen::diagonal_data::<Q, _>(&mut rng, n, kind, tol());
        let vectors: Vec<_> = eigen::eigenpairs_of(&u, &d, kind, side).into_iter().map(|p| p.vector).collect();
        assert!(eigen::independent(&vectors, side, tol()).unwrap());
        let mut dependent = vectors.clone();
        dependent.push(vectors[0].scale_left(&Q::from_ints(2, 0, 0, 0)));
        assert!(!eigen::independent(&dependent, side, tol()).unwrap());
    }
}

#[test]
fn commuting_scalars_keep_the_eigenvector() {
    let mut rng = gen::rng(37);
    let inst: gen::Diagonalizable<Q> = gen::diagonalizable(&mut rng, 3, Kind::Rc, Side::Right, tol());
    let p = &eigen::eigenpairs_of(&inst.u, &inst.d, Kind::Rc, Side::Right)[0];
    let real = Q::from_ints(3, 0, 0, 0);
    assert!(eigen::commutes_with_entries(&real, &inst.a, tol()));
    assert!(eigen::scaling_preserves(p, &real, &inst.a, tol()).unwrap());
    assert!(!eigen::commutes_with_entries(&Q::k(), &inst.a, tol()));
    assert!(!eigen::scaling_preserves(p, &Q::k(), &inst.a, tol()).unwrap());
    assert!(eigen::scaling_preserves(p, &Q::zero(), &inst.a, tol()).is_err());
}
