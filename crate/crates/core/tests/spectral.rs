use std::f64::consts::PI;

use approx::assert_relative_eq;
use biharmonic::spectral::{
    band_limited_random, evolve, integrate, iterated_laplacian, make_grid, run_trajectory, sample_field,
    spectral_energy, Grid, ScalarField,
};
use biharmonic::Error;
use proptest::prelude::*;

fn max_diff(a: &ScalarField, b: &ScalarField) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn sine_decays_at_rate_one() {
    let g = Grid::new(1, PI, 64).unwrap();
    let u = sample_field(&g, |x| x[0].sin()).unwrap();
    let v = evolve(&u, 1.0).unwrap();
    let expected = sample_field(&g, |x| (-1.0f64).exp() * x[0].sin()).unwrap();
    assert!(max_diff(&v, &expected) <= 1e-13);
    assert_eq!(v.time(), Some(1.0));
}

#[test]
fn higher_modes_decay_as_fourth_power() {
    let g = Grid::new(1, PI, 128).unwrap();
    for m in [2.0f64, 3.0, 5.0] {
        let u = sample_field(&g, |x| (m * x[0]).cos()).unwrap();
        let v = evolve(&u, 0.01).unwrap();
        let expected = sample_field(&g, |x| (-m.powi(4) * 0.01).exp() * (m * x[0]).cos()).unwrap();
        assert!(max_diff(&v, &expected) <= 1e-13, "mode {m}");
    }
}

#[test]
fn backward_time_rejected() {
    let g = make_grid(1, 1.0, 16).unwrap();
    assert!(matches!(evolve(&ScalarField::zeros(g), -0.1), Err(Error::Parameter { .. })));
    assert!(run_trajectory(&ScalarField::zeros(g), &[0.5, 0.1]).is_err());
}

#[test]
fn grid_errors_name_the_field() {
    for (dim, l, n, field) in [(3, 1.0, 16, "dim"), (1, -1.0, 16, "L"), (1, 1.0, 15, "N")] {
        match make_grid(dim, l, n) {
            Err(Error::Parameter { field: f, .. }) => assert_eq!(f, field),
            other => panic!("expected parameter error, got {other:?}"),
        }
    }
}

#[test]
fn dissipation_rate_matches_finite_difference() {
    let g = Grid::new(1, 10.0, 256).unwrap();
    let u = band_limited_random(&g, 24, 3).unwrap();
    let h = 1e-5;
    for k in 0..=2 {
        let energy = |t: f64| {
            let w = iterated_laplacian(&evolve(&u, t).unwrap(), k);
            integrate(&w.map(|v| v * v))
        };
        let t = 0.01;
        let fd = (energy(t + h) - energy(t - h)) / (2.0 * h);
        let w = evolve(&u, t).unwrap();
        let exact = -2.0 * integrate(&iterated_laplacian(&w, k + 1).map(|v| v * v));
        assert_relative_eq!(fd, exact, max_relative = 1e-6);
    }
}

#[test]
fn csv_round_trip_with_comment_header() {
    let g = Grid::new(2, 3.0, 8).unwrap();
    let u = band_limited_random(&g, 2, 11).unwrap();
    let mut buf = b"# schema=biharm-field/1\n".to_vec();
    u.write_csv(&mut buf).unwrap();
    let back = ScalarField::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back.grid(), u.grid());
    assert_eq!(back.values(), u.values());
}

#[test]
fn csv_rejects_garbage() {
    assert!(ScalarField::read_csv("x,value\n0,abc\n".as_bytes()).is_err());
    assert!(ScalarField::read_csv("".as_bytes()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semigroup_property(seed in 0u64..1000, s in 0.0f64..0.05, t in 0.0f64..0.05) {
        let g = Grid::new(1, 8.0, 128).unwrap();
        let u = band_limited_random(&g, 16, seed).unwrap();
        let two_step = evolve(&evolve(&u, s).unwrap(), t).unwrap();
        let one_step = evolve(&u, s + t).unwrap();
        prop_assert!(max_diff(&two_step, &one_step) <= 1e-12 * u.max_abs().max(1.0));
    }

    #[test]
    fn plancherel(seed in 0u64..1000, dim in 1usize..=2) {
        let g = Grid::new(dim, 5.0, 32).unwrap();
        let u = band_limited_random(&g, 6, seed).unwrap();
        let physical = integrate(&u.map(|v| v * v));
        let spectral = spectral_energy(&u);
        prop_assert!((physical - spectral).abs() <= 1e-12 * physical.max(1e-300));
    }

    #[test]
    fn energy_never_increases(seed in 0u64..1000, t in 0.0f64..1.0) {
        let g = Grid::new(1, 6.0, 64).unwrap();
        let u = band_limited_random(&g, 10, seed).unwrap();
        let v = evolve(&u, t).unwrap();
        prop_assert!(spectral_energy(&v) <= spectral_energy(&u) * (1.0 + 1e-14));
    }
}
