use approx::assert_relative_eq;
use biharmonic::kernel::{
    convolve_initial, kernel_b, kernel_b_derivative, kernel_mass, profile, profile_f, step_profile_f,
    CompactTabulation, InitialData, KernelProfile,
};
use proptest::prelude::*;

// Γ(5/4)/π
const F0: f64 = 0.288_516_869_308_234_844;

#[test]
fn origin_value_and_half_kernel() {
    assert_relative_eq!(profile_f(0.0), F0, max_relative = 1e-12);
    assert_relative_eq!(kernel_b(0.0, 16.0).unwrap(), F0 / 2.0, max_relative = 1e-12);
}

#[test]
fn unit_mass_at_several_times() {
    for t in [0.25, 1.0, 4.0] {
        assert!((kernel_mass(t).unwrap() - 1.0).abs() <= 1e-8, "t = {t}");
    }
    assert!((profile().tabulated_mass() - 1.0).abs() <= 1e-6);
}

#[test]
fn scaling_relation() {
    for &(x, t) in &[(0.3, 0.2), (-1.7, 1.0), (4.0, 2.5), (0.0, 0.01)] {
        let lhs = kernel_b(2.0 * x, 16.0 * t).unwrap();
        let rhs = kernel_b(x, t).unwrap() / 2.0;
        assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
    }
}

#[test]
fn non_positive_time_rejected() {
    assert!(kernel_b(0.0, 0.0).is_err());
    assert!(kernel_b(0.0, -1.0).is_err());
    assert!(convolve_initial(&InitialData::Step, 0.0, 0.0).is_err());
}

#[test]
fn kernel_solves_the_equation() {
    let t = 1.0;
    let dt = 1e-4;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..=60 {
        let x = -3.0 + 0.1 * i as f64;
        let bt = (kernel_b(x, t + dt).unwrap() - kernel_b(x, t - dt).unwrap()) / (2.0 * dt);
        let b4 = kernel_b_derivative(x, t, 4).unwrap();
        worst = worst.max((bt + b4).abs());
        scale = scale.max(b4.abs());
    }
    assert!(worst <= 1e-5 * scale, "residual {worst:e} vs scale {scale:e}");
}

#[test]
fn step_profile_values() {
    assert!((step_profile_f(0.0) - 0.5).abs() <= 1e-8);
    assert!((step_profile_f(profile().y_max()) - 1.0).abs() <= 1e-6);
    let overshoot = (0..4000).map(|i| step_profile_f(i as f64 * 0.005)).fold(f64::MIN, f64::max);
    assert!(overshoot > 1.0);
    assert!((overshoot - 1.052_208_673_387_134).abs() < 1e-6);
}

#[test]
fn step_convolution_is_self_similar() {
    for &(x, t) in &[(0.5, 1.0), (-0.8, 0.3), (2.0, 2.0)] {
        let a = convolve_initial(&InitialData::Step, x, t).unwrap();
        let b = convolve_initial(&InitialData::Step, 3.0 * x, 81.0 * t).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }
}

#[test]
fn compact_step_matches_closed_form_in_the_interior() {
    // indicator of [0, 80]; the trapezoid end weights put the jump at 0
    let h = 1e-3;
    let tab = CompactTabulation::sample(0.0, h, 80_001, |_| 1.0).unwrap();
    let data = InitialData::Compact(tab);
    for &(x, t) in &[(0.0, 1.0), (0.7, 0.5), (-1.0, 2.0)] {
        let a = convolve_initial(&data, x, t).unwrap();
        let b = convolve_initial(&InitialData::Step, x, t).unwrap();
        assert!((a - b).abs() <= 1e-6, "x = {x}, t = {t}: {a} vs {b}");
    }
}

#[test]
fn constant_data_is_preserved() {
    let v = convolve_initial(&InitialData::Constant(2.5), 0.3, 0.7).unwrap();
    assert!((v - 2.5).abs() <= 1e-8);
    assert!(convolve_initial(&InitialData::Constant(f64::INFINITY), 0.0, 1.0).is_err());
}

#[test]
fn decay_report_limits() {
    let p = profile();
    assert!(p.decay_report(9).is_err());
    let r0 = p.decay_report(0).unwrap();
    assert_relative_eq!(r0.sup_f, F0, max_relative = 1e-10);
    let r4 = p.decay_report(4).unwrap();
    assert!(r4.sup_f.is_finite() && r4.sup_df.is_finite());
    let w = &r4.window_sups;
    assert!(w.len() >= 2);
    assert!(w.last().unwrap() <= w.first().unwrap());
}

#[test]
fn cache_round_trip() {
    let p = KernelProfile::with_range(10.0, 401).unwrap();
    let mut buf = Vec::new();
    p.write_cache(&mut buf).unwrap();
    let back = KernelProfile::read_cache(buf.as_slice()).unwrap();
    assert_eq!(back.node_count(), 401);
    for y in [0.0, 0.37, -2.2, 9.9] {
        assert_eq!(back.f(y), p.f(y));
    }
    assert!(KernelProfile::read_cache("# schema=other\n".as_bytes()).is_err());
}

proptest! {
    #[test]
    fn profile_is_even(y in -40.0f64..40.0) {
        prop_assert!((profile_f(y) - profile_f(-y)).abs() <= 1e-10);
    }

    #[test]
    fn step_profile_is_antisymmetric_about_one_half(xi in -30.0f64..30.0) {
        prop_assert!((step_profile_f(xi) + step_profile_f(-xi) - 1.0).abs() <= 1e-8);
    }
}
