use std::f64::consts::PI;

use biharmonic::quantities::{
    make_cutoff, measure_c_gamma, monitor, monitor_in_ball, q_s, unit_cutoff, weighted_energy, MonitorKind,
};
use biharmonic::spectral::{band_limited_random, integrate, iterated_laplacian, sample_field, Grid, ScalarField};
use proptest::prelude::*;

/// `max |φ″|` of the transition profile, from an independent high-precision scan.
const MAX_PHI_SECOND: f64 = 9.841_042_301_831_145;

#[test]
fn cutoff_shape() {
    let g = Grid::new(1, 16.0, 1024).unwrap();
    let rho = 2.0;
    let c = make_cutoff(&g, &[0.0], rho, 9.0).unwrap();
    for (idx, &v) in c.gamma.values().iter().enumerate() {
        let r = g.coordinate(idx).abs();
        assert!((0.0..=1.0).contains(&v));
        if r <= rho {
            assert_eq!(v, 1.0);
        }
        if r >= 2.0 * rho {
            assert_eq!(v, 0.0);
        }
    }
    assert!(c.c_gamma >= 1.0);
}

#[test]
fn support_must_fit_in_half_box() {
    let g = Grid::new(1, 10.0, 256).unwrap();
    assert!(make_cutoff(&g, &[0.0], 2.5, 9.0).is_ok());
    assert!(make_cutoff(&g, &[0.0], 2.6, 9.0).is_err());
    assert!(make_cutoff(&g, &[1.0], 2.5, 9.0).is_err());
    assert!(make_cutoff(&g, &[0.0], -1.0, 9.0).is_err());
}

#[test]
fn stored_constant_is_near_the_profile_maximum() {
    let g = Grid::new(1, 32.0, 512).unwrap();
    for rho in [1.0, 2.0, 4.0] {
        let c = make_cutoff(&g, &[0.0], rho, 9.0).unwrap();
        assert!(c.c_gamma <= 1.05 * MAX_PHI_SECOND);
        assert!(c.c_gamma >= 1.05 * MAX_PHI_SECOND * (1.0 - 1e-4), "rho = {rho}: {}", c.c_gamma);
    }
    let c = make_cutoff(&g, &[0.0], 4.0, 9.0).unwrap();
    assert!((c.c_gamma - 10.332_911_087_293_873).abs() < 1e-9);
}

#[test]
fn oversampled_certificate() {
    for rho in [1.0, 2.0, 5.0] {
        let g = Grid::new(1, 24.0, 512).unwrap();
        let c = make_cutoff(&g, &[0.0], rho, 9.0).unwrap();
        let fine = measure_c_gamma(1, rho, g.spacing(), 16);
        assert!(fine <= c.c_gamma, "rho = {rho}: {fine} > {}", c.c_gamma);
        assert!(measure_c_gamma(1, rho, rho / 10_000.0, 1) <= c.c_gamma);
        // a coarse 2-D grid still gets enough radial samples
        let g2 = Grid::new(2, 24.0, 64).unwrap();
        let c2 = make_cutoff(&g2, &[0.0, 0.0], rho, 9.0).unwrap();
        assert!(measure_c_gamma(2, rho, g2.spacing(), 16) <= c2.c_gamma);
        assert!(measure_c_gamma(2, rho, rho / 10_000.0, 1) <= c2.c_gamma);
    }
}

#[test]
fn sine_energy_on_the_full_torus() {
    let g = Grid::new(1, PI, 64).unwrap();
    let u = sample_field(&g, |x| x[0].sin()).unwrap();
    let e = weighted_energy(&u, 1, &unit_cutoff(&g, 9.0)).unwrap();
    assert!((e - PI).abs() <= 1e-10);
    let z = ScalarField::zeros(g);
    for k in 0..4 {
        assert_eq!(weighted_energy(&z, k, &unit_cutoff(&g, 9.0)).unwrap(), 0.0);
    }
}

#[test]
fn e_monitor_scaling() {
    // ũ(x̃) = u(2x̃) on [−4, 4) has the same samples as u on [−8, 8)
    let c: f64 = 2.0;
    let big = Grid::new(1, 8.0, 256).unwrap();
    let small = Grid::new(1, 4.0, 256).unwrap();
    let u = band_limited_random(&big, 20, 5).unwrap();
    let u_tilde = ScalarField::new(small, u.values().to_vec()).unwrap();
    let e = monitor(&u, MonitorKind::E, 1.0, None).unwrap();
    let e_tilde = monitor_in_ball(&u_tilde, MonitorKind::E, 1.0 / c.powi(4), None, 1.0 / c).unwrap();
    let scale = e.values.max_abs();
    assert!(scale > 0.0);
    for (a, b) in e.values.values().iter().zip(e_tilde.values.values()) {
        assert!((a - b).abs() <= 1e-8 * scale);
    }
    let argmax = |f: &ScalarField| {
        f.values()
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (i, &v)| if v > best.1 { (i, v) } else { best })
            .0
    };
    assert_eq!(argmax(&e.values), argmax(&e_tilde.values));
}

#[test]
fn b_monitor_is_scale_invariant() {
    let big = Grid::new(1, 8.0, 256).unwrap();
    let small = Grid::new(1, 4.0, 256).unwrap();
    let u = band_limited_random(&big, 20, 9).unwrap();
    let u_tilde = ScalarField::new(small, u.values().to_vec()).unwrap();
    let b = monitor(&u, MonitorKind::B, 0.8, None).unwrap();
    let b_tilde = monitor(&u_tilde, MonitorKind::B, 0.8 / 16.0, None).unwrap();
    let scale = b.values.max_abs();
    for (x, y) in b.values.values().iter().zip(b_tilde.values.values()) {
        assert!((x - y).abs() <= 1e-8 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn q2_dominates_q(seed in 0u64..10_000) {
        let g = Grid::new(1, 6.0, 128).unwrap();
        let u = band_limited_random(&g, 20, seed).unwrap();
        let q = monitor(&u, MonitorKind::Q, 1.0, None).unwrap().values;
        let q2 = q_s(&u, 2);
        for (a, b) in q.values().iter().zip(q2.values()) {
            prop_assert!(*a <= b * (1.0 + 1e-12) + 1e-300);
        }
    }

    #[test]
    fn weight_is_dominated_by_one(seed in 0u64..10_000, k in 0usize..3) {
        let g = Grid::new(1, 12.0, 256).unwrap();
        let u = band_limited_random(&g, 30, seed).unwrap();
        let cut = make_cutoff(&g, &[0.0], 2.0, 9.0).unwrap();
        let weighted = weighted_energy(&u, k, &cut).unwrap();
        let full = integrate(&iterated_laplacian(&u, k).map(|v| v * v));
        prop_assert!(weighted >= 0.0);
        prop_assert!(weighted <= full * (1.0 + 1e-12));
    }

    #[test]
    fn monitors_are_nonnegative(seed in 0u64..10_000, s in 2usize..5) {
        let g = Grid::new(1, 3.0, 64).unwrap();
        let u = band_limited_random(&g, 8, seed).unwrap();
        for (kind, order) in [(MonitorKind::Q, None), (MonitorKind::Es, Some(s)), (MonitorKind::Bs, Some(s))] {
            let m = monitor(&u, kind, 0.5, order).unwrap();
            prop_assert!(m.values.values().iter().all(|v| *v >= 0.0));
        }
    }
}
