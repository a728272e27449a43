//! The step-data solution `u(x, t) = F(x / t^{1/4})` with `u0 = 1` for
//! `x > 0`: its blow-up constant `k0*`, speed constant `k1*` and overshoot.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{profile, profile_derivatives_direct, step_profile_direct};
use crate::quantities::PointwiseSolution;

/// Scan step in the similarity variable.
pub const SCAN_STEP: f64 = 1e-3;

/// Constants of the self-similar profile; `t0 = 1` and `x0 = xi_star`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepAnalysis {
    /// `max_ξ f′(ξ)² = s |u_xx(x_s, s)|²`.
    pub k0_star: f64,
    /// Leftmost maximiser of `|f′|`.
    pub xi_star: f64,
    /// `f‴` at the leftmost maximiser of `|f‴|`, i.e. `t Δ²u` along `y(t)`.
    pub k1_star: f64,
    /// Leftmost maximiser of `|f‴|`.
    pub y_star: f64,
    /// `max F − 1`.
    pub overshoot: f64,
    pub overshoot_at: f64,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::param("t", format!("need t > 0, got {t}")))
    }
}

/// Leftmost index of the largest `|v|`.
fn leftmost_argmax(values: impl Iterator<Item = f64>) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v.abs() > best.1 {
            best = (i, v.abs());
        }
    }
    best
}

/// Root of `g` in `[a, b]` by bisection; `g(a)` and `g(b)` must differ in sign
/// (otherwise the better endpoint is returned).
fn bisect(mut a: f64, mut b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let mut ga = g(a);
    let gb = g(b);
    if ga == 0.0 {
        return a;
    }
    if gb == 0.0 {
        return b;
    }
    if ga.signum() == gb.signum() {
        return if ga.abs() < gb.abs() { a } else { b };
    }
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Refines the leftmost maximiser of `|f^{(order)}|` on `[lo, hi]`.
fn refine_extremum(order: usize, lo: f64, hi: f64) -> f64 {
    let prof = profile();
    let count = ((hi - lo) / SCAN_STEP).round() as usize;
    let at = |i: usize| lo + i as f64 * SCAN_STEP;
    let (i, _) = leftmost_argmax((0..=count).map(|i| prof.derivative(at(i), order)));
    let x0 = at(i);
    bisect(x0 - SCAN_STEP, x0 + SCAN_STEP, |x| profile_derivatives_direct(x)[order + 1])
}

/// Scans `ξ ∈ [−30, 30]` at step `1e−3` and refines each extremum by
/// bisection on the next derivative, evaluated by direct quadrature.
pub fn analyze() -> StepAnalysis {
    let y_max = profile().y_max();
    let xi_star = refine_extremum(1, -y_max, y_max);
    let y_star = refine_extremum(3, -y_max, y_max);
    let d1 = profile_derivatives_direct(xi_star)[1];
    let d3 = profile_derivatives_direct(y_star)[3];

    // F′ = f, so the overshoot sits at a zero of f on ξ > 0.
    let prof = profile();
    let count = (y_max / SCAN_STEP).round() as usize;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..=count {
        let v = prof.step_profile(i as f64 * SCAN_STEP);
        if v > best.1 {
            best = (i, v);
        }
    }
    let x0 = best.0 as f64 * SCAN_STEP;
    let overshoot_at = bisect(x0 - SCAN_STEP, x0 + SCAN_STEP, |x| profile_derivatives_direct(x)[0]);
    StepAnalysis {
        k0_star: d1 * d1,
        xi_star,
        k1_star: d3,
        y_star,
        overshoot: step_profile_direct(overshoot_at) - 1.0,
        overshoot_at,
    }
}

/// [`analyze`], computed once.
pub fn analysis() -> &'static StepAnalysis {
    static ANALYSIS: OnceLock<StepAnalysis> = OnceLock::new();
    ANALYSIS.get_or_init(analyze)
}

/// `u(x, t) = F(x / t^{1/4})`.
pub fn step_u(x: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(profile().step_profile(x / t.powf(0.25)))
}

/// `∂x^n u(x, t) = t^{−n/4} f^{(n−1)}(x / t^{1/4})` for `1 ≤ n ≤ 5`.
pub fn step_u_derivative(x: f64, t: f64, order: usize) -> Result<f64> {
    check_time(t)?;
    if order == 0 {
        return step_u(x, t);
    }
    if order > 5 {
        return Err(Error::param("order", format!("must be ≤ 5, got {order}")));
    }
    let q = t.powf(0.25);
    Ok(profile().derivative(x / q, order - 1) / q.powi(order as i32))
}

/// `s |u_xx(x_s, s)|²` along `x_s = s^{1/4} ξ*`.
pub fn blowup_monitor(s: f64) -> Result<f64> {
    let xs = s.powf(0.25) * analysis().xi_star;
    let uxx = step_u_derivative(xs, s, 2)?;
    Ok(s * uxx * uxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedRow {
    pub t: f64,
    /// `max_x |Δ²u(x, t)|`.
    pub max_bilaplacian: f64,
    /// `t · max_x |Δ²u|`.
    pub scaled: f64,
    /// Leftmost maximiser.
    pub y: f64,
}

/// `max_x |Δ²u(x, t)|` for each `t`, scanned in `x` and refined by bisection.
pub fn nonintegrable_speed_report(t_grid: &[f64]) -> Result<Vec<SpeedRow>> {
    let y_max = profile().y_max();
    t_grid
        .iter()
        .map(|&t| {
            check_time(t)?;
            let q = t.powf(0.25);
            let reach = y_max * q;
            let step = SCAN_STEP * q;
            let count = (2.0 * reach / step).round() as usize;
            let at = |i: usize| -reach + i as f64 * step;
            let (i, _) = leftmost_argmax((0..=count).map(|i| profile().derivative(at(i) / q, 3)));
            let x0 = at(i);
            let y = bisect(x0 - step, x0 + step, |x| profile_derivatives_direct(x / q)[4]);
            let max_bilaplacian = profile_derivatives_direct(y / q)[3].abs() / t;
            Ok(SpeedRow {
                t,
                max_bilaplacian,
                scaled: t * max_bilaplacian,
                y,
            })
        })
        .collect()
}

/// `sup_{x′ ≥ x} |1 − u(x′, t)|`, scanned in the similarity variable.
pub fn gap_envelope(x: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    let prof = profile();
    let xi0 = x / t.powf(0.25);
    let mut sup: f64 = 0.0;
    let mut xi = xi0;
    while xi <= prof.y_max() {
        sup = sup.max((1.0 - prof.step_profile(xi)).abs());
        xi += SCAN_STEP;
    }
    Ok(sup)
}

/// Step data with its interface at `x = interface`: `u0 = 1` to the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSolution {
    pub interface: f64,
}

impl PointwiseSolution for StepSolution {
    fn value(&self, x: f64, t: f64) -> Result<f64> {
        step_u(x - self.interface, t)
    }

    fn laplacian(&self, x: f64, t: f64) -> Result<f64> {
        step_u_derivative(x - self.interface, t, 2)
    }
}
