//! A Tychonoff-type solution of `∂t u = σ Δ^k u` in one space variable,
//!
//! ```text
//! u(x, t) = Σ_j g_j(t) x^{2jk},   g_j = σ^j g0^{(j)} / (2jk)!,   g0(t) = exp(−t^{−p}),
//! ```
//!
//! which is smooth, non-zero for `t > 0` and flat as `t ↓ 0`. The derivatives
//! `g0^{(j)}(t)` come from the Cauchy integral over the circle `|z − t| = t/2`,
//! discretised by the trapezoid rule; one FFT of the contour samples yields
//! every order at once. Magnitudes are carried as logarithms because
//! `j! (2/t)^j` leaves the `f64` range long before the series converges.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Largest contour node count tried before giving up.
pub const MAX_CONTOUR_NODES: usize = 1 << 16;

/// Series parameters. `sigma = −1` solves `∂t u = −Δ²u` when `k = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TychonoffParams {
    pub k: usize,
    pub p: f64,
    pub sigma: i32,
    /// Truncation index `J`.
    pub terms: usize,
    /// Contour nodes `M`.
    pub nodes: usize,
}

impl Default for TychonoffParams {
    fn default() -> Self {
        Self {
            k: 2,
            p: 2.0,
            sigma: -1,
            terms: 40,
            nodes: 1024,
        }
    }
}

impl TychonoffParams {
    pub fn new(k: usize, p: f64, sigma: i32, terms: usize, nodes: usize) -> Result<Self> {
        let params = Self {
            k,
            p,
            sigma,
            terms,
            nodes,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::param("k", "must be at least 1"));
        }
        if !(self.p > 1.0 && self.p < 3.0) {
            return Err(Error::param(
                "p",
                format!("need 1 < p < 3 so that cos(pπ/6) > 0, got {}", self.p),
            ));
        }
        if self.sigma != 1 && self.sigma != -1 {
            return Err(Error::param("sigma", format!("must be ±1, got {}", self.sigma)));
        }
        check_nodes(self.nodes)
    }

    /// `ε0 = cos(pπ/6)`.
    pub fn epsilon0(&self) -> f64 {
        (self.p * PI / 6.0).cos()
    }

    fn sigma_pow(&self, j: usize) -> f64 {
        if self.sigma < 0 && j % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

fn check_nodes(nodes: usize) -> Result<()> {
    if nodes < 64 || nodes % 2 != 0 {
        return Err(Error::param("M", format!("contour nodes must be even and ≥ 64, got {nodes}")));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::param("t", format!("need t > 0, got {t}")))
    }
}

/// Half-opening angle of the contour seen from the origin,
/// `θ0 = arctan(ρ / √(t² − ρ²))`; equals `π/6` for `ρ = t/2`.
pub fn contour_angle(t: f64, rho: f64) -> f64 {
    (rho / (t * t - rho * rho).sqrt()).atan()
}

/// `ln n!`, tabulated up to a fixed size and by Stirling's series beyond.
pub fn ln_factorial(n: usize) -> f64 {
    const TABLE: usize = 1 << 16;
    static LN_FACT: OnceLock<Vec<f64>> = OnceLock::new();
    let table = LN_FACT.get_or_init(|| {
        let mut v = Vec::with_capacity(TABLE);
        let mut acc = 0.0;
        v.push(0.0);
        for i in 1..TABLE {
            acc += (i as f64).ln();
            v.push(acc);
        }
        v
    });
    if n < TABLE {
        return table[n];
    }
    let x = n as f64 + 1.0;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
}

/// A signed number stored as `sign · exp(ln_abs)`; zero has sign 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln_abs: f64::NEG_INFINITY,
        sign: 0.0,
    };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            Self {
                ln_abs: v.abs().ln(),
                sign: v.signum(),
            }
        }
    }

    /// Back to `f64`; may overflow to `±∞`.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }
}

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sum of log-form terms, in the order given.
fn sum_log_terms(terms: &[LogValue]) -> f64 {
    let peak = terms
        .iter()
        .filter(|v| v.sign != 0.0)
        .map(|v| v.ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return 0.0;
    }
    let scaled = compensated_sum(
        terms
            .iter()
            .filter(|v| v.sign != 0.0)
            .map(|v| v.sign * (v.ln_abs - peak).exp()),
    );
    scaled * peak.exp()
}

/// All derivatives `g0^{(j)}(t)`, `j ≤ max_order`, of `g0 = exp(−t^{−p})`.
#[derive(Debug, Clone)]
pub struct FlatDerivatives {
    t: f64,
    rho: f64,
    nodes: usize,
    /// Common log-scale factored out of the contour samples.
    log_scale: f64,
    /// Scaled Taylor coefficients `ρ^j g0^{(j)}(t) / j! · e^{−log_scale}`.
    coeffs: Vec<f64>,
}

struct ContourPass {
    log_scale: f64,
    coeffs: Vec<Complex64>,
}

fn contour_pass(t: f64, p: f64, nodes: usize) -> ContourPass {
    let rho = 0.5 * t;
    let exponents: Vec<Complex64> = (0..nodes)
        .map(|m| {
            let theta = 2.0 * PI * m as f64 / nodes as f64;
            let z = Complex64::new(t + rho * theta.cos(), rho * theta.sin());
            // principal branch: z^{−p} = exp(−p Log z)
            -(z.ln() * -p).exp()
        })
        .collect();
    let log_scale = exponents.iter().map(|w| w.re).fold(f64::NEG_INFINITY, f64::max);
    let mut data: Vec<Complex64> = exponents.iter().map(|w| (w - log_scale).exp()).collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(nodes).process(&mut data);
    let inv = 1.0 / nodes as f64;
    ContourPass {
        log_scale,
        coeffs: data.into_iter().map(|c| c * inv).collect(),
    }
}

/// Absolute floor, relative to the largest scaled sample (which is 1), below
/// which contour coefficients are indistinguishable from roundoff.
const ROUNDOFF_FLOOR: f64 = 1e-13;
const AGREEMENT: f64 = 1e-10;

impl FlatDerivatives {
    /// Starts at `nodes` contour points (raised so that `max_order < M/2`) and
    /// doubles until two successive node counts agree on every order.
    pub fn compute(t: f64, p: f64, nodes: usize, max_order: usize) -> Result<Self> {
        check_time(t)?;
        check_nodes(nodes)?;
        let mut m = nodes;
        while m < 2 * (max_order + 1) {
            m *= 2;
        }
        let mut coarse = contour_pass(t, p, m);
        loop {
            if 2 * m > MAX_CONTOUR_NODES {
                return Err(Error::Quadrature {
                    order: max_order,
                    t,
                    reason: format!("no agreement between successive node counts up to M = {m}"),
                });
            }
            let fine = contour_pass(t, p, 2 * m);
            let shift = (coarse.log_scale - fine.log_scale).exp();
            let agree = (0..=max_order).all(|j| {
                let a = coarse.coeffs[j].re * shift;
                let b = fine.coeffs[j].re;
                (a - b).abs() <= AGREEMENT * b.abs() + ROUNDOFF_FLOOR
            });
            m *= 2;
            if agree {
                for (j, c) in fine.coeffs.iter().enumerate().take(max_order + 1) {
                    if c.im.abs() > AGREEMENT * c.re.abs() + ROUNDOFF_FLOOR {
                        return Err(Error::Quadrature {
                            order: j,
                            t,
                            reason: format!("imaginary part {:e} against real part {:e}", c.im, c.re),
                        });
                    }
                }
                return Ok(Self {
                    t,
                    rho: 0.5 * t,
                    nodes: m,
                    log_scale: fine.log_scale,
                    coeffs: fine.coeffs[..=max_order].iter().map(|c| c.re).collect(),
                });
            }
            coarse = fine;
        }
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Contour nodes actually used.
    pub fn nodes_used(&self) -> usize {
        self.nodes
    }

    /// `g0^{(j)}(t)` in log form.
    pub fn log_derivative(&self, j: usize) -> LogValue {
        let c = self.coeffs[j];
        if c == 0.0 {
            return LogValue::ZERO;
        }
        LogValue {
            ln_abs: ln_factorial(j) - j as f64 * self.rho.ln() + self.log_scale + c.abs().ln(),
            sign: c.signum(),
        }
    }

    pub fn derivative(&self, j: usize) -> f64 {
        self.log_derivative(j).to_f64()
    }
}

/// `g0^{(j)}(t)` for `g0 = exp(−t^{−p})`, by contour quadrature with `nodes`
/// starting points.
pub fn g0_derivative(j: usize, t: f64, p: f64, nodes: usize) -> Result<f64> {
    Ok(FlatDerivatives::compute(t, p, nodes, j)?.derivative(j))
}

/// `ln` of the Cauchy bound `j! (2/t)^j exp(−ε0 (2t)^{−p})`.
pub fn derivative_bound_ln(j: usize, t: f64, params: &TychonoffParams) -> f64 {
    ln_factorial(j) + j as f64 * (2.0 / t).ln() - params.epsilon0() * (2.0 * t).powf(-params.p)
}

/// `g_j(t) = σ^j g0^{(j)}(t) / (2jk)!`.
pub fn series_coefficient(j: usize, t: f64, params: &TychonoffParams) -> Result<f64> {
    params.validate()?;
    let flat = FlatDerivatives::compute(t, params.p, params.nodes, j)?;
    let g = flat.log_derivative(j);
    Ok(LogValue {
        ln_abs: g.ln_abs - ln_factorial(2 * j * params.k),
        sign: g.sign * params.sigma_pow(j),
    }
    .to_f64())
}

/// A value with a certified bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    /// `ln tail_bound`, finite even when `tail_bound` overflows.
    pub ln_tail_bound: f64,
    /// Index of the last summed term.
    pub terms_used: usize,
    /// Set when the tail bound exceeds half the value.
    pub truncation_warning: bool,
}

impl SeriesValue {
    fn new(value: f64, ln_tail_bound: f64, terms_used: usize) -> Self {
        let tail_bound = ln_tail_bound.exp();
        Self {
            value,
            tail_bound,
            ln_tail_bound,
            terms_used,
            truncation_warning: value != 0.0 && tail_bound > 0.5 * value.abs(),
        }
    }
}

/// Contour derivatives at one time, reused across evaluation points.
#[derive(Debug, Clone)]
pub struct TimeSlice {
    params: TychonoffParams,
    flat: FlatDerivatives,
}

impl TimeSlice {
    /// Prepares `g0^{(j)}(t)` for `j ≤ max_order`.
    pub fn new(t: f64, params: TychonoffParams, max_order: usize) -> Result<Self> {
        params.validate()?;
        let flat = FlatDerivatives::compute(t, params.p, params.nodes, max_order)?;
        Ok(Self { params, flat })
    }

    pub fn time(&self) -> f64 {
        self.flat.t
    }

    pub fn flat(&self) -> &FlatDerivatives {
        &self.flat
    }

    fn ensure(&mut self, order: usize) -> Result<()> {
        if order > self.flat.max_order() {
            let want = order.max(2 * self.flat.max_order());
            self.flat = FlatDerivatives::compute(self.flat.t, self.params.p, self.params.nodes, want)?;
        }
        Ok(())
    }

    /// `Σ_{j ≤ terms} ∂t^τ ∂x^s [g_j(t) x^{2jk}]` exactly as truncated.
    pub fn partial_sum(&mut self, x: f64, terms: usize, time_order: usize, space_order: usize) -> Result<f64> {
        self.ensure(terms + time_order)?;
        let k = self.params.k;
        let lnx = x.abs().ln();
        let mut out = Vec::with_capacity(terms + 1);
        for j in 0..=terms {
            let n = 2 * j * k;
            if n < space_order {
                continue;
            }
            let power = n - space_order;
            if x == 0.0 && power > 0 {
                continue;
            }
            let g = self.flat.log_derivative(j + time_order);
            if g.sign == 0.0 {
                continue;
            }
            let x_sign = if x < 0.0 && power % 2 == 1 { -1.0 } else { 1.0 };
            let x_part = if power == 0 { 0.0 } else { power as f64 * lnx };
            out.push(LogValue {
                ln_abs: g.ln_abs - ln_factorial(power) + x_part,
                sign: g.sign * x_sign * self.params.sigma_pow(j),
            });
        }
        Ok(sum_log_terms(&out))
    }

    /// `u(x, t)` with the tail bound `e^{−ε0(2t)^{−p}} Σ_{j>J} z^j/j!`,
    /// `z = 2|x|^{2k}/t`; `J` is raised until `z < J + 2`.
    pub fn eval_u(&mut self, x: f64) -> Result<SeriesValue> {
        let t = self.flat.t;
        let params = self.params;
        let z = 2.0 * x.abs().powi(2 * params.k as i32) / t;
        let terms = params.terms.max((z.floor() as usize).saturating_sub(1));
        let value = self.partial_sum(x, terms, 0, 0)?;
        let flat_part = -params.epsilon0() * (2.0 * t).powf(-params.p);
        let ln_tail = if z == 0.0 {
            f64::NEG_INFINITY
        } else {
            let j1 = (terms + 1) as f64;
            flat_part + j1 * z.ln() - ln_factorial(terms + 1) - (1.0 - z / (j1 + 1.0)).ln()
        };
        Ok(SeriesValue::new(value, ln_tail, terms))
    }

    /// `∂t^τ ∂x^s u(x, t)` for `τ ≤ 1`, `s ≤ 2k`. The tail is bounded termwise
    /// by `i! (2/t)^i |x|^{2ik−S} / (2ik−S)! · e^{−ε0(2t)^{−p}}` with
    /// `S = s + 2kτ`, completed geometrically once the term ratio is below
    /// 1/2 and decreasing.
    pub fn eval_derivative(&mut self, x: f64, time_order: usize, space_order: usize) -> Result<SeriesValue> {
        let params = self.params;
        if time_order > 1 {
            return Err(Error::param("time_order", format!("must be 0 or 1, got {time_order}")));
        }
        if space_order > 2 * params.k {
            return Err(Error::param(
                "space_order",
                format!("must be ≤ 2k = {}, got {space_order}", 2 * params.k),
            ));
        }
        if time_order == 0 && space_order == 0 {
            return self.eval_u(x);
        }
        let terms = params.terms;
        let value = self.partial_sum(x, terms, time_order, space_order)?;
        let ln_tail = derivative_tail_ln(x, self.flat.t, &params, terms + time_order, space_order + 2 * params.k * time_order);
        Ok(SeriesValue::new(value, ln_tail, terms))
    }
}

/// `ln Σ_{i > first_excluded−1} T_i` for the termwise derivative bound.
fn derivative_tail_ln(x: f64, t: f64, params: &TychonoffParams, last_included: usize, effective_order: usize) -> f64 {
    let k = params.k;
    let flat_part = -params.epsilon0() * (2.0 * t).powf(-params.p);
    let ln_term = |i: usize| -> Option<f64> {
        let n = 2 * i * k;
        if n < effective_order {
            return None;
        }
        let power = n - effective_order;
        if x == 0.0 {
            return (power == 0).then(|| ln_factorial(i) + i as f64 * (2.0 / t).ln() + flat_part);
        }
        Some(ln_factorial(i) + i as f64 * (2.0 / t).ln() + power as f64 * x.abs().ln() - ln_factorial(power) + flat_part)
    };
    let mut acc: Vec<f64> = Vec::new();
    if x == 0.0 {
        let i = effective_order.div_ceil(2 * k);
        if 2 * i * k == effective_order && i > last_included {
            acc.extend(ln_term(i));
        }
        return log_sum(&acc);
    }
    let mut i = last_included + 1;
    let mut prev_ratio = f64::INFINITY;
    loop {
        let Some(cur) = ln_term(i) else {
            i += 1;
            continue;
        };
        acc.push(cur);
        let next = ln_term(i + 1).expect("later terms exist once one does");
        let ln_ratio = next - cur;
        let ratio = ln_ratio.exp();
        if ratio < 0.5 && ratio < prev_ratio {
            // T_i r/(1 − r) bounds every later term
            acc.push(cur + ln_ratio - (1.0 - ratio).ln());
            break;
        }
        prev_ratio = ratio;
        i += 1;
    }
    log_sum(&acc)
}

fn log_sum(lns: &[f64]) -> f64 {
    let peak = lns.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return peak;
    }
    peak + compensated_sum(lns.iter().map(|l| (l - peak).exp())).ln()
}

/// `u(x, t)` with certified tail.
pub fn eval_u(x: f64, t: f64, params: &TychonoffParams) -> Result<SeriesValue> {
    let z = 2.0 * x.abs().powi(2 * params.k as i32) / t;
    let order = params.terms.max((z.floor() as usize).saturating_sub(1));
    TimeSlice::new(t, *params, order)?.eval_u(x)
}

/// `∂t^τ ∂x^s u(x, t)` with certified tail.
pub fn eval_derivative(x: f64, t: f64, orders: (usize, usize), params: &TychonoffParams) -> Result<SeriesValue> {
    if orders == (0, 0) {
        return eval_u(x, t, params);
    }
    TimeSlice::new(t, *params, params.terms + orders.0)?.eval_derivative(x, orders.0, orders.1)
}

/// Both sides of the truncation-residual identity
/// `(∂t − σΔ^k) u_J = σ P_J g_{J+1} x^{2Jk}`, `P_J = (2Jk+2k)!/(2Jk)!`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualCheck {
    pub direct: f64,
    pub closed_form: f64,
    pub relative_error: f64,
}

pub fn truncation_residual(x: f64, t: f64, terms: usize, params: &TychonoffParams) -> Result<ResidualCheck> {
    let mut slice = TimeSlice::new(t, *params, terms + 1)?;
    let sigma = params.sigma as f64;
    let k = params.k;
    let ut = slice.partial_sum(x, terms, 1, 0)?;
    let uxx = slice.partial_sum(x, terms, 0, 2 * k)?;
    let direct = ut - sigma * uxx;
    let g = slice.flat.log_derivative(terms + 1);
    let n = 2 * terms * k;
    let power = if n == 0 { 0.0 } else { n as f64 * x.abs().ln() };
    let x_sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let closed = LogValue {
        ln_abs: g.ln_abs - ln_factorial(n + 2 * k) + ln_factorial(n + 2 * k) - ln_factorial(n) + power,
        sign: g.sign * sigma * params.sigma_pow(terms + 1) * x_sign,
    };
    let closed_form = if x == 0.0 && n > 0 { 0.0 } else { closed.to_f64() };
    let scale = direct.abs().max(closed_form.abs());
    let relative_error = if scale == 0.0 { 0.0 } else { (direct - closed_form).abs() / scale };
    Ok(ResidualCheck {
        direct,
        closed_form,
        relative_error,
    })
}

/// `ln` of the bound `exp(−ε0(2t)^{−p} + d^{2k}/(t/2))` on `sup_{|x|≤d} |u|`.
pub fn flat_trace_bound_ln(d: f64, t: f64, params: &TychonoffParams) -> f64 {
    -params.epsilon0() * (2.0 * t).powf(-params.p) + d.powi(2 * params.k as i32) / (0.5 * t)
}

/// `max |u(x, t)|` over `samples + 1` equally spaced points of `[0, d]` (the
/// series is even in `x`).
pub fn sup_abs(d: f64, t: f64, samples: usize, params: &TychonoffParams) -> Result<f64> {
    let z = 2.0 * d.abs().powi(2 * params.k as i32) / t;
    let order = params.terms.max((z.floor() as usize).saturating_sub(1));
    let mut slice = TimeSlice::new(t, *params, order)?;
    let mut sup: f64 = 0.0;
    for i in 0..=samples {
        let x = d * i as f64 / samples.max(1) as f64;
        sup = sup.max(slice.eval_u(x)?.value.abs());
    }
    Ok(sup)
}

/// One row of the growth-hypothesis scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub x: f64,
    pub t: f64,
    /// `t |∂x² u|²`.
    pub monitor: f64,
    pub uxx: SeriesValue,
}

/// `t |∂x² u(x, t)|²` along increasing `xs`.
pub fn hypothesis_violation_scan(t: f64, xs: &[f64], params: &TychonoffParams) -> Result<Vec<ScanRow>> {
    check_time(t)?;
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("x_samples", "must be strictly increasing"));
    }
    let mut slice = TimeSlice::new(t, *params, params.terms)?;
    xs.iter()
        .map(|&x| {
            let uxx = slice.eval_derivative(x, 0, 2)?;
            Ok(ScanRow {
                x,
                t,
                monitor: t * uxx.value * uxx.value,
                uxx,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_derivatives() {
        let e = (-1.0f64).exp();
        assert!((g0_derivative(0, 1.0, 2.0, 1024).unwrap() - e).abs() < 1e-12);
        assert!((g0_derivative(1, 1.0, 2.0, 1024).unwrap() - 2.0 * e).abs() < 1e-10);
        assert!(g0_derivative(0, 0.0, 2.0, 1024).is_err());
        assert!(g0_derivative(0, 1.0, 2.0, 63).is_err());
    }

    #[test]
    fn contour_angle_is_thirty_degrees() {
        for t in [0.01, 0.3, 1.0, 7.0] {
            assert!((contour_angle(t, t / 2.0) - PI / 6.0).abs() < 1e-14);
        }
        assert!((TychonoffParams::default().epsilon0() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn first_coefficients() {
        let params = TychonoffParams::default();
        let g0 = series_coefficient(0, 0.8, &params).unwrap();
        assert!((g0 - (-1.0 / 0.64f64).exp()).abs() < 1e-14);
        assert!((ln_factorial(4) - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn single_term_truncation() {
        let params = TychonoffParams {
            terms: 0,
            ..Default::default()
        };
        let mut slice = TimeSlice::new(1.0, params, 4).unwrap();
        let a = slice.partial_sum(0.0, 0, 0, 0).unwrap();
        let b = slice.partial_sum(0.9, 0, 0, 0).unwrap();
        assert_eq!(a, b);
        assert!((a - (-1.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn golden_value() {
        let v = eval_u(1.0, 1.0, &TychonoffParams::default()).unwrap();
        assert!((v.value - 0.337_204_576_158_635_011).abs() <= v.tail_bound + 1e-14);
        assert!(!v.truncation_warning);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(TychonoffParams::new(2, 3.0, -1, 40, 1024).is_err());
        assert!(TychonoffParams::new(2, 2.0, 0, 40, 1024).is_err());
        assert!(TychonoffParams::new(0, 2.0, 1, 40, 1024).is_err());
        assert!(hypothesis_violation_scan(0.5, &[1.0, 0.5], &TychonoffParams::default()).is_err());
    }
}
