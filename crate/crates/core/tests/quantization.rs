use padic_fuchs::cocycle::TwistOperator;
use padic_fuchs::quantization::{quantization_scale, representable_gn_points};
use padic_fuchs::{
    omega_point, rep_pi, symmetry, Complex64, Domain, GnPoint, LcFunction, Level, OperatorMatrix,
    Quantizer, StarMethod, XnElement,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn levels() -> Vec<Level> {
    [(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)]
        .iter()
        .map(|&(p, n, m)| Level::new(p, n, m).unwrap())
        .collect()
}

#[test]
fn quantization_is_an_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for level in levels() {
        let q = Quantizer::new(level).unwrap();
        for _ in 0..50 {
            let f = LcFunction::random(level, Domain::Xn, &mut rng);
            let g = LcFunction::random(level, Domain::Xn, &mut rng);
            let hs = q
                .quantize(&f)
                .unwrap()
                .hs_inner(&q.quantize(&g).unwrap())
                .unwrap();
            assert!((hs - f.inner(&g).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn dequantize_inverts_quantize() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for level in levels() {
        let q = Quantizer::new(level).unwrap();
        let f = LcFunction::random(level, Domain::Xn, &mut rng);
        assert!(
            q.dequantize(&q.quantize(&f).unwrap())
                .unwrap()
                .max_abs_diff(&f)
                .unwrap()
                < 1e-12
        );
    }
}

#[test]
fn pi_is_unitary_on_random_points() {
    for level in levels() {
        for g in representable_gn_points(&level).iter().step_by(7).take(50) {
            assert!(rep_pi(&level, g).unwrap().unitarity_residual().unwrap() < 1e-12);
        }
    }
}

#[test]
fn omega_is_conjugated_symmetry() {
    let level = Level::new(3, 1, 2).unwrap();
    let sigma = symmetry(&level).unwrap();
    for k in 0..level.side() as u64 {
        for s in 0..level.side() as u64 {
            let g = XnElement::new(k, s);
            let pi = rep_pi(&level, &GnPoint::lift(&level, &g)).unwrap();
            let expected = pi.matmul(&sigma).unwrap().matmul(&pi.adjoint()).unwrap();
            let om = omega_point(&level, &g).unwrap();
            assert!(om.max_abs_diff(&expected).unwrap() < 1e-12);
            let sq = om.matmul(&om).unwrap();
            assert!(
                sq.max_abs_diff(&OperatorMatrix::identity(level.side()))
                    .unwrap()
                    < 1e-12
            );
        }
    }
}

#[test]
fn covariance_for_every_representable_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for level in levels() {
        let q = Quantizer::new(level).unwrap();
        let f = LcFunction::random(level, Domain::Xn, &mut rng);
        let a = q.quantize(&f).unwrap();
        for g in representable_gn_points(&level) {
            let pi = rep_pi(&level, &g).unwrap();
            let idx = g.class(&level).unwrap().index(&level);
            let lhs = pi.matmul(&a).unwrap().matmul(&pi.adjoint()).unwrap();
            let rhs = q
                .quantize(&f.left_translate(q.grid(), idx).unwrap())
                .unwrap();
            assert!(lhs.sub(&rhs).unwrap().frobenius_norm() < 1e-10);
        }
    }
}

#[test]
fn star_product_methods_associativity_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let level = Level::new(3, 1, 1).unwrap();
    let q = Quantizer::new(level).unwrap();
    for _ in 0..20 {
        let f: Vec<LcFunction> = (0..3)
            .map(|_| LcFunction::random(level, Domain::Xn, &mut rng))
            .collect();
        let k = q.star_product(&f[0], &f[1], StarMethod::Kernel).unwrap();
        let hs = q
            .star_product(&f[0], &f[1], StarMethod::HilbertSchmidt)
            .unwrap();
        assert!(k.max_abs_diff(&hs).unwrap() < 1e-10);
        let lhs = q.star_product(&k, &f[2], StarMethod::Kernel).unwrap();
        let inner = q.star_product(&f[1], &f[2], StarMethod::Kernel).unwrap();
        let rhs = q.star_product(&f[0], &inner, StarMethod::Kernel).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
        for g in [1, 4, 8] {
            let moved = q
                .star_product(
                    &f[0].left_translate(q.grid(), g).unwrap(),
                    &f[1].left_translate(q.grid(), g).unwrap(),
                    StarMethod::Kernel,
                )
                .unwrap();
            assert!(
                moved
                    .max_abs_diff(&k.left_translate(q.grid(), g).unwrap())
                    .unwrap()
                    < 1e-10
            );
        }
    }
}

#[test]
fn star_unit_is_the_transported_identity() {
    // 𝛀*(I) is the unit of ⋆
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let level = Level::new(5, 1, 1).unwrap();
    let q = Quantizer::new(level).unwrap();
    let unit = q
        .dequantize(&OperatorMatrix::identity(level.side()))
        .unwrap();
    let f = LcFunction::random(level, Domain::Xn, &mut rng);
    for method in [StarMethod::Kernel, StarMethod::HilbertSchmidt] {
        assert!(
            q.star_product(&unit, &f, method)
                .unwrap()
                .max_abs_diff(&f)
                .unwrap()
                < 1e-10
        );
        assert!(
            q.star_product(&f, &unit, method)
                .unwrap()
                .max_abs_diff(&f)
                .unwrap()
                < 1e-10
        );
    }
}

#[test]
fn twist_coefficient_is_conjugate_kernel_at_identity() {
    for level in levels().into_iter().take(3) {
        let q = Quantizer::new(level).unwrap();
        let f = TwistOperator::new(level).unwrap();
        let w2 = level.cell_weight().powi(2);
        let c = quantization_scale(&level);
        for g1 in 0..q.grid().len() {
            for g2 in 0..q.grid().len() {
                let expected = q.star_kernel(0, g1, g2).conj() * (c * w2);
                assert!((f.coefficient(g1, g2) - expected).norm() < 1e-15);
            }
        }
        let k = q.star_kernel(0, 0, 0);
        assert!((k - Complex64::new(c.powi(3), 0.0)).norm() < 1e-12);
    }
}
