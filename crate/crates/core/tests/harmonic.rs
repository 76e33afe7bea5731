use padic_fuchs::fourier::{periodized_fourier, periodized_integral};
use padic_fuchs::function::{pullback_phi, pullback_sigma};
use padic_fuchs::{
    fourier_gamma, fourier_gamma_inv, haar_integral, xn_inv, xn_mul, BallClass, Complex64, Domain,
    LcFunction, Level, XnElement, XnGrid,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LEVELS: [(u64, u32, u32); 4] = [(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)];

fn levels() -> impl Iterator<Item = Level> {
    LEVELS.iter().map(|&(p, n, m)| Level::new(p, n, m).unwrap())
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

#[test]
fn xn_group_law_examples() {
    let level = Level::new(3, 1, 1).unwrap();
    // (1,[1/9])·(4,[0]) = (4,[1/9]) since [4⁻¹/9] = [7/9] = [1/9]
    let g = XnElement::new(0, 1);
    let h = XnElement::new(1, 0);
    assert_eq!(xn_mul(&level, &g, &h).unwrap(), XnElement::new(1, 1));
    let g = XnElement::new(1, 1);
    let inv = xn_inv(&level, &g).unwrap();
    assert_eq!(xn_mul(&level, &g, &inv).unwrap(), XnElement::IDENTITY);
    assert_eq!(xn_inv(&level, &inv).unwrap(), g);
    assert!(xn_mul(&level, &XnElement::new(7, 0), &g).is_err());
}

#[test]
fn grid_sizes() {
    for level in levels() {
        let grid = XnGrid::new(level).unwrap();
        assert_eq!(grid.len(), level.side() * level.side());
        assert_eq!(Domain::Gamma.len(&level), level.side());
        assert_eq!(Domain::Units.len(&level), level.side());
    }
}

#[test]
fn haar_examples() {
    for level in levels() {
        let vol = (level.p() as f64).powi(-(level.n() as i32));
        let f = LcFunction::constant(level, Domain::Units, one());
        assert!((haar_integral(&f).unwrap() - vol).norm() < 1e-15);
        let cell = LcFunction::indicator(level, Domain::Units, level.side() - 1);
        assert!((haar_integral(&cell).unwrap() - level.cell_weight()).norm() < 1e-18);
    }
}

#[test]
fn substitution_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for level in levels() {
        for _ in 0..20 {
            let f = LcFunction::random(level, Domain::Units, &mut rng);
            let lhs = haar_integral(&pullback_sigma(&f).unwrap()).unwrap();
            assert!((lhs - haar_integral(&f).unwrap()).norm() < 1e-12);
            let h = LcFunction::random(level, Domain::Ball, &mut rng);
            let lhs = haar_integral(&pullback_phi(&h).unwrap()).unwrap();
            assert!((lhs - h.integral()).norm() < 1e-12);
        }
    }
}

#[test]
fn sigma_and_phi_permute_cells() {
    for level in levels() {
        let ids = LcFunction::from_fn(level, Domain::Units, |k| Complex64::new(k as f64, 0.0));
        let mut seen: Vec<usize> = pullback_sigma(&ids)
            .unwrap()
            .values()
            .iter()
            .map(|v| v.re as usize)
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..level.side()).collect::<Vec<_>>());
        let ids = LcFunction::from_fn(level, Domain::Ball, |k| Complex64::new(k as f64, 0.0));
        let mut seen: Vec<usize> = pullback_phi(&ids)
            .unwrap()
            .values()
            .iter()
            .map(|v| v.re as usize)
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..level.side()).collect::<Vec<_>>());
    }
}

#[test]
fn fourier_examples() {
    for level in levels() {
        let delta = LcFunction::indicator(level, Domain::Gamma, 0);
        let ft = fourier_gamma(&delta).unwrap();
        assert!(
            ft.max_abs_diff(&LcFunction::constant(level, Domain::Ball, one()))
                .unwrap()
                < 1e-15
        );
        let back = fourier_gamma_inv(&LcFunction::constant(level, Domain::Ball, one())).unwrap();
        assert!(back.max_abs_diff(&delta).unwrap() < 1e-14);
    }
}

#[test]
fn fourier_round_trip_and_plancherel() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for level in levels() {
        let scale = (level.p() as f64).powi(-(level.n() as i32));
        for _ in 0..100 {
            let f = LcFunction::random(level, Domain::Gamma, &mut rng);
            let g = fourier_gamma(&f).unwrap();
            assert!(fourier_gamma_inv(&g).unwrap().max_abs_diff(&f).unwrap() < 1e-12);
            assert!((g.norm().powi(2) - scale * f.norm().powi(2)).abs() < 1e-12);
        }
    }
}

#[test]
fn counting_measure_matches_haar_on_periodized_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for level in levels() {
        let qn = (level.q() as f64).powi(-(level.n() as i32));
        for _ in 0..10 {
            let f = LcFunction::random(level, Domain::Gamma, &mut rng);
            let sum: Complex64 = f.values().iter().sum();
            assert!((sum - qn * periodized_integral(&f).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn fourier_on_k_is_scaled_fourier_on_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for level in levels() {
        let qn = (level.q() as f64).powi(level.n() as i32);
        let f = LcFunction::random(level, Domain::Gamma, &mut rng);
        let g = fourier_gamma(&f).unwrap();
        for (r, gv) in g.values().iter().enumerate() {
            let x = BallClass(r as u64).representative(&level);
            assert!((periodized_fourier(&f, &x).unwrap() - qn * gv).norm() < 1e-12);
        }
        // supported on p^n Z_p
        for v in 0..level.n() as i64 {
            let x = level.padic(1).shift(v);
            assert!(periodized_fourier(&f, &x).unwrap().norm() < 1e-12);
        }
        let far = level.padic(1).shift(-(level.n() as i64) - 1);
        assert!(periodized_fourier(&f, &far).is_err());
    }
}

#[test]
fn left_translation_is_unitary_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let level = Level::new(5, 1, 1).unwrap();
    let grid = XnGrid::new(level).unwrap();
    let f = LcFunction::random(level, Domain::Xn, &mut rng);
    let g = LcFunction::random(level, Domain::Xn, &mut rng);
    for h in 0..grid.len() {
        let (fh, gh) = (
            f.left_translate(&grid, h).unwrap(),
            g.left_translate(&grid, h).unwrap(),
        );
        assert!((fh.inner(&gh).unwrap() - f.inner(&g).unwrap()).norm() < 1e-14);
    }
}
