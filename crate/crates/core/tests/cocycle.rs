use padic_fuchs::cocycle::{
    induced_inverse_permutation, structured_unitarity_residual, xi_jacobian, XiPoint,
};
use padic_fuchs::{
    build_twist, cocycle_residual, induced_grid_permutation, unitarity_residual, xi_forward,
    xi_inverse, xi_jacobian_abs, Budget, Error, Level, OperatorMatrix, TwistMethod,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn constructions_agree_at_acceptance_levels() {
    for (p, n, m) in [(3, 1, 1), (5, 1, 1)] {
        let level = Level::new(p, n, m).unwrap();
        let d = build_twist(level, TwistMethod::Direct, Budget::default()).unwrap();
        let f = build_twist(level, TwistMethod::Factorized, Budget::default()).unwrap();
        assert_eq!(d.matrix().rows(), level.side().pow(4));
        assert!(d.matrix().max_abs_diff(f.matrix()).unwrap() < 1e-10);
    }
}

#[test]
fn twist_is_unitary() {
    for (p, n, m) in [(3, 1, 1), (5, 1, 1), (3, 2, 1)] {
        let level = Level::new(p, n, m).unwrap();
        let f = build_twist(level, TwistMethod::Factorized, Budget::default()).unwrap();
        assert!(unitarity_residual(&f).unwrap() < 1e-10);
    }
    let level = Level::new(3, 1, 2).unwrap();
    assert!(structured_unitarity_residual(&level).unwrap() < 1e-12);
    assert_eq!(
        OperatorMatrix::identity(16).unitarity_residual().unwrap(),
        0.0
    );
}

#[test]
fn cocycle_relation_holds() {
    let level = Level::new(3, 1, 1).unwrap();
    let f = build_twist(level, TwistMethod::Direct, Budget::default()).unwrap();
    assert!(cocycle_residual(&f, Budget::default()).unwrap() < 1e-10);
}

#[test]
fn permutations_are_exact() {
    for (p, n, m) in [(3, 1, 1), (3, 1, 2), (5, 1, 1)] {
        let level = Level::new(p, n, m).unwrap();
        let perm = induced_grid_permutation(&level).unwrap();
        assert_eq!(perm.len(), level.side().pow(4));
        let inv = induced_inverse_permutation(&level).unwrap();
        assert!(perm.iter().enumerate().all(|(i, &j)| inv[j] == i));
    }
}

#[test]
fn xi_on_two_hundred_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let level = Level::new(3, 1, 1).unwrap();
    let (n, prec) = (level.n(), level.precision());
    for _ in 0..200 {
        let pt = XiPoint::random(level.p(), n, prec, &mut rng);
        let back = xi_inverse(&xi_forward(&pt, n).unwrap(), n).unwrap();
        assert!(back.congruent(&pt) && back.precision() == prec);
        assert!(xi_jacobian_abs(&pt, n).unwrap().is_one());
        assert!(xi_jacobian(&pt, n).unwrap().leading.abs().unwrap().is_one());
    }
}

#[test]
fn oversized_requests_are_out_of_budget() {
    let level = Level::new(3, 1, 2).unwrap();
    let err = build_twist(level, TwistMethod::Factorized, Budget::megabytes(64)).unwrap_err();
    assert!(matches!(err, Error::OutOfBudget(_)));
}
