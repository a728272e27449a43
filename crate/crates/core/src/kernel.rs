//! The one-dimensional biharmonic heat kernel.
//!
//! The profile is normalised to unit mass,
//!
//! ```text
//! f(y) = (1/π) ∫₀^∞ e^{−w⁴} cos(wy) dw,     b(x, t) = t^{−1/4} f(x / t^{1/4}),
//! ```
//!
//! so that `∫ b(·, t) = 1` and `u = b(·, t) * u0` solves `∂t u = −∂x⁴ u`.
//! Derivatives are taken under the integral sign. The step-data solution is
//! `u(x, t) = F(x / t^{1/4})` with `F(ξ) = ∫_{−∞}^ξ f`.

use std::f64::consts::PI;
use std::io::{BufRead, Write};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Frequency cutoff: `e^{−W⁴}` is far below `1e−14`.
pub const W_CUTOFF: f64 = 6.0;
/// Half-width of the tabulated range.
pub const Y_MAX: f64 = 30.0;
/// Number of tabulation nodes over `[−Y_MAX, Y_MAX]`.
pub const TABLE_NODES: usize = 4001;
/// Highest derivative order exposed by [`KernelProfile::derivative`].
pub const MAX_ORDER: usize = 4;

const STORED_ORDERS: usize = MAX_ORDER + 2;
const MIN_PANELS: usize = 12;
const NODES_PER_PERIOD: f64 = 10.0;
const CACHE_SCHEMA: &str = "biharm-kernel-profile/1";

fn panel_count(y: f64) -> usize {
    let gl = GaussLegendre::sixteen().len() as f64;
    let periods = W_CUTOFF * y.abs() / (2.0 * PI);
    MIN_PANELS.max((NODES_PER_PERIOD * periods / gl).ceil() as usize)
}

/// Beyond this `|y|` the profile and its derivatives are below `1e−300`.
const NEGLIGIBLE_Y: f64 = 1.0e3;

/// `f^{(n)}(y)` for `n = 0..=5`, computed in one pass of panel quadrature.
pub fn profile_derivatives_direct(y: f64) -> [f64; STORED_ORDERS] {
    if y.abs() > NEGLIGIBLE_Y || y.is_nan() {
        return [0.0; STORED_ORDERS];
    }
    let rule = GaussLegendre::sixteen();
    let panels = panel_count(y);
    let width = W_CUTOFF / panels as f64;
    let mut acc = [0.0; STORED_ORDERS];
    for p in 0..panels {
        let lo = p as f64 * width;
        let half = 0.5 * width;
        let mid = lo + half;
        let mut panel = [0.0; STORED_ORDERS];
        for (x, wt) in rule.nodes().iter().zip(rule.weights()) {
            let w = mid + half * x;
            let damp = wt * (-(w * w) * (w * w)).exp();
            let (s, c) = (w * y).sin_cos();
            // cos(θ + nπ/2) cycles through cos, −sin, −cos, sin
            let phase = [c, -s, -c, s];
            let mut wp = damp;
            for (n, slot) in panel.iter_mut().enumerate() {
                *slot += wp * phase[n % 4];
                wp *= w;
            }
        }
        for (a, v) in acc.iter_mut().zip(panel) {
            *a += v * half;
        }
    }
    acc.map(|v| v / PI)
}

/// `f^{(order)}(y)` by direct quadrature, `order ≤ 5`.
pub fn profile_derivative_direct(y: f64, order: usize) -> Result<f64> {
    if order >= STORED_ORDERS {
        return Err(Error::param("order", format!("derivative order must be ≤ {}, got {order}", STORED_ORDERS - 1)));
    }
    Ok(profile_derivatives_direct(y)[order])
}

/// `F(ξ) = 1/2 + (1/π) ∫₀^∞ e^{−w⁴} sin(wξ)/w dw`, the step profile evaluated
/// without the tabulation.
pub fn step_profile_direct(xi: f64) -> f64 {
    if xi.abs() > NEGLIGIBLE_Y {
        return if xi > 0.0 { 1.0 } else { 0.0 };
    }
    let rule = GaussLegendre::sixteen();
    let panels = panel_count(xi);
    let integral = rule.composite(0.0, W_CUTOFF, panels, |w| {
        let w4 = (w * w) * (w * w);
        (-w4).exp() * (w * xi).sin() / w
    });
    0.5 + integral / PI
}

/// Tabulated profile `f, f′, …, f⁗` (plus `f⁽⁵⁾` for Hermite interpolation of
/// `f⁗`) and the cumulative step profile at the nodes.
#[derive(Debug, Clone)]
pub struct KernelProfile {
    y_max: f64,
    nodes: usize,
    spacing: f64,
    tables: Vec<Vec<f64>>,
    cumulative: Vec<f64>,
}

/// One row of [`KernelProfile::decay_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow {
    pub m: u32,
    /// `sup |y|^m |f(y)|` over the tabulation nodes.
    pub sup_f: f64,
    /// `sup |y|^m |f′(y)|` over the tabulation nodes.
    pub sup_df: f64,
    /// `sup |y|^m |f(y)|` on consecutive windows `[5 + 5i, 10 + 5i]`.
    pub window_sups: Vec<f64>,
}

impl KernelProfile {
    /// Builds the default table (`y_max = 30`, 4001 nodes).
    pub fn build() -> Self {
        Self::with_range(Y_MAX, TABLE_NODES).expect("default tabulation parameters are valid")
    }

    pub fn with_range(y_max: f64, nodes: usize) -> Result<Self> {
        if !(y_max.is_finite() && y_max > 0.0) {
            return Err(Error::param("y_max", format!("must be positive, got {y_max}")));
        }
        if nodes < 5 || nodes % 2 == 0 {
            return Err(Error::param("nodes", format!("need an odd count ≥ 5, got {nodes}")));
        }
        let center = (nodes - 1) / 2;
        let spacing = y_max / center as f64;
        let rows: Vec<[f64; STORED_ORDERS]> = (0..nodes)
            .into_par_iter()
            .map(|i| profile_derivatives_direct((i as f64 - center as f64) * spacing))
            .collect();
        let tables = (0..STORED_ORDERS)
            .map(|n| rows.iter().map(|r| r[n]).collect())
            .collect();
        Ok(Self::assemble(y_max, nodes, tables))
    }

    fn assemble(y_max: f64, nodes: usize, tables: Vec<Vec<f64>>) -> Self {
        let center = (nodes - 1) / 2;
        let spacing = y_max / center as f64;
        let f = &tables[0];
        let df = &tables[1];
        let cell = |i: usize| spacing / 2.0 * (f[i] + f[i + 1]) + spacing * spacing / 12.0 * (df[i] - df[i + 1]);
        let mut cumulative = vec![0.0; nodes];
        cumulative[center] = 0.5;
        for i in center..nodes - 1 {
            cumulative[i + 1] = cumulative[i] + cell(i);
        }
        for i in (0..center).rev() {
            cumulative[i] = cumulative[i + 1] - cell(i);
        }
        Self {
            y_max,
            nodes,
            spacing,
            tables,
            cumulative,
        }
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn cutoff(&self) -> f64 {
        W_CUTOFF
    }

    /// Coordinate of node `i`; nodes are symmetric about 0 bit-exactly.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - ((self.nodes - 1) / 2) as f64) * self.spacing
    }

    /// Tabulated samples of `f^{(order)}`, `order ≤ 4`.
    pub fn samples(&self, order: usize) -> &[f64] {
        &self.tables[order.min(MAX_ORDER)]
    }

    fn locate(&self, y: f64) -> (usize, f64) {
        let u = y / self.spacing + ((self.nodes - 1) / 2) as f64;
        let i = (u.floor().max(0.0) as usize).min(self.nodes - 2);
        (i, u - i as f64)
    }

    /// `f^{(order)}(y)`; cubic Hermite interpolation inside the table, direct
    /// quadrature outside it.
    pub fn derivative(&self, y: f64, order: usize) -> f64 {
        assert!(order <= MAX_ORDER, "derivative order {order} exceeds {MAX_ORDER}");
        if y.abs() > self.y_max {
            return profile_derivatives_direct(y)[order];
        }
        let (i, s) = self.locate(y);
        let v = &self.tables[order];
        let d = &self.tables[order + 1];
        let h = self.spacing;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * v[i] + h * h10 * d[i] + h01 * v[i + 1] + h * h11 * d[i + 1]
    }

    pub fn f(&self, y: f64) -> f64 {
        self.derivative(y, 0)
    }

    /// `F(ξ) = ∫_{−∞}^ξ f`, integrating the Hermite interpolant exactly.
    pub fn step_profile(&self, xi: f64) -> f64 {
        if xi.abs() > self.y_max {
            return step_profile_direct(xi);
        }
        let (i, s) = self.locate(xi);
        let f = &self.tables[0];
        let df = &self.tables[1];
        let h = self.spacing;
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s2 * s2;
        let i00 = s4 / 2.0 - s3 + s;
        let i10 = s4 / 4.0 - 2.0 * s3 / 3.0 + s2 / 2.0;
        let i01 = -s4 / 2.0 + s3;
        let i11 = s4 / 4.0 - s3 / 3.0;
        self.cumulative[i] + h * (i00 * f[i] + h * i10 * df[i] + i01 * f[i + 1] + h * i11 * df[i + 1])
    }

    /// `∫_{−y_max}^{y_max} f`.
    pub fn tabulated_mass(&self) -> f64 {
        self.cumulative[self.nodes - 1] - self.cumulative[0]
    }

    /// Suprema of `|y|^m |f|` and `|y|^m |f′|` over the tabulation.
    pub fn decay_report(&self, m: u32) -> Result<DecayRow> {
        if m > 8 {
            return Err(Error::param("m", format!("decay exponent must be ≤ 8 (tabulation accuracy limit), got {m}")));
        }
        let mut sup_f: f64 = 0.0;
        let mut sup_df: f64 = 0.0;
        let windows = ((self.y_max - 5.0) / 5.0).floor().max(0.0) as usize;
        let mut window_sups = vec![0.0f64; windows];
        for i in 0..self.nodes {
            let y = self.node(i);
            let w = y.abs().powi(m as i32);
            let vf = w * self.tables[0][i].abs();
            sup_f = sup_f.max(vf);
            sup_df = sup_df.max(w * self.tables[1][i].abs());
            let a = y.abs();
            if a >= 5.0 {
                let idx = (((a - 5.0) / 5.0).floor() as usize).min(windows.saturating_sub(1));
                if windows > 0 {
                    window_sups[idx] = window_sups[idx].max(vf);
                }
            }
        }
        Ok(DecayRow {
            m,
            sup_f,
            sup_df,
            window_sups,
        })
    }

    /// CSV `y,f,f1,f2,f3,f4`, one row per node.
    pub fn write_table<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "y,f,f1,f2,f3,f4")?;
        for i in 0..self.nodes {
            write!(out, "{}", self.node(i))?;
            for n in 0..=MAX_ORDER {
                write!(out, ",{}", self.tables[n][i])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Self-describing cache: `#` header lines with the quadrature settings,
    /// then `y,f,f1,f2,f3,f4,f5`.
    pub fn write_cache<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# schema={CACHE_SCHEMA}")?;
        writeln!(out, "# W={W_CUTOFF}")?;
        writeln!(out, "# y_max={}", self.y_max)?;
        writeln!(out, "# nodes={}", self.nodes)?;
        writeln!(out, "# gauss_legendre_points={}", GaussLegendre::sixteen().len())?;
        writeln!(out, "# min_nodes_per_period={NODES_PER_PERIOD}")?;
        writeln!(out, "# tolerance=1e-10")?;
        writeln!(out, "y,f,f1,f2,f3,f4,f5")?;
        for i in 0..self.nodes {
            write!(out, "{}", self.node(i))?;
            for table in &self.tables {
                write!(out, ",{}", table[i])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Reads a cache written by [`KernelProfile::write_cache`]; the recorded
    /// cutoff and schema must match this build.
    pub fn read_cache<R: BufRead>(input: R) -> Result<Self> {
        let mut y_max = None;
        let mut nodes = None;
        let mut tables: Vec<Vec<f64>> = vec![Vec::new(); STORED_ORDERS];
        let mut seen_header = false;
        for line in input.lines() {
            let line = line.map_err(|e| Error::Format(e.to_string()))?;
            if let Some(meta) = line.strip_prefix('#') {
                let Some((key, value)) = meta.trim().split_once('=') else {
                    continue;
                };
                match key {
                    "schema" if value != CACHE_SCHEMA => {
                        return Err(Error::Format(format!("unsupported cache schema `{value}`")));
                    }
                    "W" if value.parse::<f64>().ok() != Some(W_CUTOFF) => {
                        return Err(Error::Format(format!("cache built with W={value}, expected {W_CUTOFF}")));
                    }
                    "y_max" => y_max = value.parse::<f64>().ok(),
                    "nodes" => nodes = value.parse::<usize>().ok(),
                    _ => {}
                }
                continue;
            }
            if !seen_header {
                if line.trim() != "y,f,f1,f2,f3,f4,f5" {
                    return Err(Error::Format(format!("unexpected cache header `{line}`")));
                }
                seen_header = true;
                continue;
            }
            let cols = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Format(format!("bad number in `{line}`: {e}")))?;
            if cols.len() != STORED_ORDERS + 1 {
                return Err(Error::Format(format!("expected {} columns in `{line}`", STORED_ORDERS + 1)));
            }
            for (t, v) in tables.iter_mut().zip(&cols[1..]) {
                t.push(*v);
            }
        }
        let (y_max, nodes) = match (y_max, nodes) {
            (Some(y), Some(n)) => (y, n),
            _ => return Err(Error::Format("cache is missing y_max or nodes".into())),
        };
        if tables[0].len() != nodes || nodes < 5 || nodes % 2 == 0 {
            return Err(Error::Format(format!(
                "cache declares {nodes} nodes but holds {} rows",
                tables[0].len()
            )));
        }
        Ok(Self::assemble(y_max, nodes, tables))
    }
}

/// The default table, built on first use and shared read-only.
pub fn profile() -> &'static KernelProfile {
    static PROFILE: OnceLock<KernelProfile> = OnceLock::new();
    PROFILE.get_or_init(KernelProfile::build)
}

/// `f(y)` from the shared table.
pub fn profile_f(y: f64) -> f64 {
    profile().f(y)
}

/// `F(ξ) = ∫_{−∞}^ξ f`.
pub fn step_profile_f(xi: f64) -> f64 {
    profile().step_profile(xi)
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::param("t", format!("kernel needs t > 0, got {t}")))
    }
}

/// `b(x, t) = t^{−1/4} f(x / t^{1/4})`.
pub fn kernel_b(x: f64, t: f64) -> Result<f64> {
    kernel_b_derivative(x, t, 0)
}

/// `∂x^n b(x, t) = t^{−(1+n)/4} f^{(n)}(x / t^{1/4})`.
pub fn kernel_b_derivative(x: f64, t: f64, order: usize) -> Result<f64> {
    check_time(t)?;
    if order > MAX_ORDER {
        return Err(Error::param("order", format!("must be ≤ {MAX_ORDER}, got {order}")));
    }
    let q = t.powf(0.25);
    Ok(profile().derivative(x / q, order) / q.powi(1 + order as i32))
}

/// `∫ b(x, t) dx` by Gauss–Legendre panels over `|x| ≤ y_max t^{1/4}`.
pub fn kernel_mass(t: f64) -> Result<f64> {
    check_time(t)?;
    let reach = profile().y_max() * t.powf(0.25);
    let rule = GaussLegendre::sixteen();
    let q = t.powf(0.25);
    Ok(rule.composite(-reach, reach, 240, |x| profile().f(x / q) / q))
}

/// Compactly supported initial data given by samples on a uniform grid,
/// taken to be zero outside the sampled interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactTabulation {
    start: f64,
    spacing: f64,
    values: Vec<f64>,
}

impl CompactTabulation {
    pub fn new(start: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) || !start.is_finite() {
            return Err(Error::param("spacing", format!("must be positive and finite, got {spacing}")));
        }
        if values.len() < 2 {
            return Err(Error::param("values", "need at least two samples"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::param("values", format!("initial data must be bounded, found {v}")));
        }
        Ok(Self { start, spacing, values })
    }

    /// Samples `u0` at `start + j·spacing`.
    pub fn sample(start: f64, spacing: f64, count: usize, u0: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..count).map(|j| u0(start + j as f64 * spacing)).collect();
        Self::new(start, spacing, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Initial data understood by [`convolve_initial`].
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `u0 = 1` for `x > 0`, `0` for `x < 0`.
    Step,
    Constant(f64),
    Compact(CompactTabulation),
}

/// `u(x, t) = ∫ u0(x − y) b(y, t) dy`.
pub fn convolve_initial(u0: &InitialData, x: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    let q = t.powf(0.25);
    match u0 {
        InitialData::Step => Ok(step_profile_f(x / q)),
        InitialData::Constant(c) => {
            if !c.is_finite() {
                return Err(Error::param("u0", format!("initial data must be bounded, got {c}")));
            }
            // the profile beyond y_max is below 1e−18 in magnitude
            Ok(c * profile().tabulated_mass())
        }
        InitialData::Compact(tab) => {
            // trapezoid rule; the end samples carry half weight
            let n = tab.values.len();
            let mut acc = 0.0;
            for (j, v) in tab.values.iter().enumerate() {
                if *v == 0.0 {
                    continue;
                }
                let y = tab.start + j as f64 * tab.spacing;
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                acc += w * v * profile().f((x - y) / q);
            }
            Ok(acc * tab.spacing / q)
        }
    }
}
