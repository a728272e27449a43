use std::f64::consts::{E, PI};

use approx::assert_relative_eq;
use biharmonic::tychonoff::{
    contour_angle, derivative_bound_ln, eval_derivative, eval_u, flat_trace_bound_ln, g0_derivative,
    hypothesis_violation_scan, ln_factorial, series_coefficient, sup_abs, FlatDerivatives, TychonoffParams,
};

// u(1, 1) for k = 2, p = 2, σ = −1 from J = 80, M = 4096
const U_1_1: f64 = 0.337_204_576_158_635;

fn params() -> TychonoffParams {
    TychonoffParams::default()
}

#[test]
fn flat_function_derivatives() {
    assert!((g0_derivative(0, 1.0, 2.0, 1024).unwrap() - (-1.0f64).exp()).abs() <= 1e-12);
    assert!((g0_derivative(1, 1.0, 2.0, 1024).unwrap() - 2.0 / E).abs() <= 1e-10);
    // d²/dt² exp(−t⁻²) at t = 1 is (4 − 6)/e
    assert_relative_eq!(g0_derivative(2, 1.0, 2.0, 1024).unwrap(), -2.0 / E, max_relative = 1e-10);
}

#[test]
fn contour_angle_for_half_radius() {
    for t in [0.1, 1.0, 7.0] {
        assert!((contour_angle(t, t / 2.0) - PI / 6.0).abs() <= 1e-14);
    }
    assert!((params().epsilon0() - 0.5).abs() <= 1e-15);
}

#[test]
fn parameter_validation() {
    assert!(TychonoffParams::new(2, 3.0, -1, 40, 1024).is_err());
    assert!(TychonoffParams::new(2, 2.0, 0, 40, 1024).is_err());
    assert!(TychonoffParams::new(0, 2.0, 1, 40, 1024).is_err());
    assert!(TychonoffParams::new(2, 2.0, 1, 40, 63).is_err());
    assert!(eval_u(1.0, 0.0, &params()).is_err());
}

#[test]
fn coefficient_normalisation() {
    let p = params();
    let t = 0.9;
    assert_eq!(series_coefficient(0, t, &p).unwrap(), g0_derivative(0, t, p.p, p.nodes).unwrap());
    // λ(1, 2) = 1/4!
    let ratio = series_coefficient(1, t, &p).unwrap() / g0_derivative(1, t, p.p, p.nodes).unwrap();
    assert_relative_eq!(ratio, -1.0 / 24.0, max_relative = 1e-13);
    assert_relative_eq!(ln_factorial(200), 863.231_987_192_405_4, max_relative = 1e-13);
}

#[test]
fn coefficient_recurrence() {
    for sigma in [-1, 1] {
        let p = TychonoffParams::new(2, 2.0, sigma, 40, 1024).unwrap();
        let (t, h) = (0.8, 1e-4);
        for j in 0..4usize {
            let fd = (series_coefficient(j, t + h, &p).unwrap() - series_coefficient(j, t - h, &p).unwrap()) / (2.0 * h);
            let n = 2 * j * p.k;
            let falling = (ln_factorial(n + 2 * p.k) - ln_factorial(n)).exp();
            let rhs = sigma as f64 * falling * series_coefficient(j + 1, t, &p).unwrap();
            assert_relative_eq!(fd, rhs, max_relative = 1e-5);
        }
    }
}

#[test]
fn derivative_bound_up_to_order_81() {
    let p = params();
    for t in [0.1, 0.5, 1.0, 3.0] {
        let flat = FlatDerivatives::compute(t, p.p, p.nodes, 2 * p.terms + 1).unwrap();
        for j in 0..=2 * p.terms + 1 {
            assert!(flat.log_derivative(j).ln_abs <= derivative_bound_ln(j, t, &p), "j = {j}, t = {t}");
        }
    }
}

#[test]
fn single_term_is_independent_of_x() {
    // J = 0 stays in force while z = 2x⁴/t < 2
    let p = TychonoffParams { terms: 0, ..params() };
    let g0 = (-(0.7f64).powi(-2)).exp();
    for x in [0.0, 0.5, 0.8] {
        let v = eval_u(x, 0.7, &p).unwrap();
        assert_eq!(v.terms_used, 0);
        assert!((v.value - g0).abs() <= 1e-15);
    }
    assert!(eval_u(2.0, 0.7, &p).unwrap().terms_used > 0);
}

#[test]
fn golden_value_within_tail() {
    let v = eval_u(1.0, 1.0, &params()).unwrap();
    assert!((v.value - U_1_1).abs() <= v.tail_bound + 1e-14, "{} vs {U_1_1}", v.value);
    let fine = eval_u(1.0, 1.0, &TychonoffParams { terms: 80, nodes: 4096, ..params() }).unwrap();
    assert!((fine.value - U_1_1).abs() <= 1e-14);
}

#[test]
fn zero_order_derivative_is_the_value() {
    let p = params();
    for (x, t) in [(0.5, 0.4), (1.5, 1.0)] {
        assert_eq!(eval_derivative(x, t, (0, 0), &p).unwrap().value, eval_u(x, t, &p).unwrap().value);
    }
}

#[test]
fn spatial_derivative_bounds() {
    let p = params();
    for t in [0.1, 0.2] {
        for s in [1usize, 2] {
            let v = eval_derivative(1.0, t, (0, s), &p).unwrap();
            let ln_bound = ln_factorial(s) - p.epsilon0() * (2.0 * t).powf(-p.p) + 2.0 / t;
            assert!(v.value.abs() <= ln_bound.exp(), "s = {s}, t = {t}");
        }
    }
}

#[test]
fn flat_trace_is_dominated() {
    let p = params();
    for d in [1.0, 2.0] {
        let mut previous = f64::INFINITY;
        for t in [0.1, 0.05, 0.02] {
            let sup = sup_abs(d, t, 100, &p).unwrap();
            assert!(sup.ln() <= flat_trace_bound_ln(d, t, &p), "d = {d}, t = {t}");
            if d == 1.0 {
                assert!(sup < previous);
            }
            previous = sup;
        }
    }
}

#[test]
fn growth_scan() {
    let rows = hypothesis_violation_scan(0.5, &[0.0, 1.0, 2.0, 3.0], &params()).unwrap();
    assert!(rows[0].monitor.is_finite());
    assert!(rows.windows(2).all(|w| w[1].monitor > w[0].monitor));
    assert!(rows[3].monitor >= 10.0 * rows[2].monitor);
    assert!((rows[3].monitor / rows[2].monitor - 22.739).abs() < 1e-3);
    for r in &rows[1..] {
        assert!(r.uxx.tail_bound < 1e-3 * r.uxx.value.abs());
    }
    assert!(hypothesis_violation_scan(0.5, &[1.0, 0.5], &params()).is_err());
}
