//! Periodic-box discretisation of the line (or plane), spectral calculus and
//! exact Fourier-multiplier evolution of `∂t u = −Δ²u`.
//!
//! Transform convention: the forward DFT is unnormalised and the inverse
//! carries the factor `1/N^dim`. Mode index `m` of an axis with `N` points on
//! `[−L, L)` has wavenumber `ξ = π m / L` for `m ≤ N/2` and `π (m − N) / L`
//! otherwise. Odd-order derivatives zero the Nyquist mode so that real fields
//! stay real.

use std::io::{BufRead, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Uniform periodic grid on `[−L, L)^dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    half_width: f64,
    points: usize,
}

impl Grid {
    pub fn new(dim: usize, half_width: f64, points: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::param("dim", format!("must be 1 or 2, got {dim}")));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::param(
                "L",
                format!("half width must be positive and finite, got {half_width}"),
            ));
        }
        if points < 8 {
            return Err(Error::param("N", format!("need at least 8 points, got {points}")));
        }
        if points % 2 != 0 {
            return Err(Error::param("N", format!("point count must be even, got {points}")));
        }
        Ok(Self {
            dim,
            half_width,
            points,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    /// Total number of nodes, `N^dim`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume element `h^dim` of the rectangle rule.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Coordinate of node `j` along an axis: `−L + j·h`.
    pub fn coordinate(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    /// Per-axis indices of a flat node index. In 2-D the layout is
    /// `index = i·N + j` with `i` the x-index.
    pub fn axis_indices(&self, index: usize) -> [usize; 2] {
        match self.dim {
            1 => [index, 0],
            _ => [index / self.points, index % self.points],
        }
    }

    /// Coordinates of a flat node index (the unused second slot is 0 in 1-D).
    pub fn node(&self, index: usize) -> [f64; 2] {
        let [i, j] = self.axis_indices(index);
        match self.dim {
            1 => [self.coordinate(i), 0.0],
            _ => [self.coordinate(i), self.coordinate(j)],
        }
    }

    /// Signed angular wavenumber of FFT bin `m`.
    pub fn wavenumber(&self, m: usize) -> f64 {
        let n = self.points as isize;
        let m = m as isize;
        let signed = if m <= n / 2 { m } else { m - n };
        std::f64::consts::PI * signed as f64 / self.half_width
    }

    fn is_nyquist(&self, m: usize) -> bool {
        m == self.points / 2
    }

    /// Same box with twice the points per axis.
    pub fn refined(&self) -> Grid {
        Grid {
            points: self.points * 2,
            ..*self
        }
    }
}

/// `make_grid` of the operation list.
pub fn make_grid(dim: usize, half_width: f64, points: usize) -> Result<Grid> {
    Grid::new(dim, half_width, points)
}

/// Samples of a real function on a [`Grid`], optionally tagged with a time.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
    time: Option<f64>,
}

impl ScalarField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::param(
                "values",
                format!("expected {} samples, got {}", grid.len(), values.len()),
            ));
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            let node = grid.node(idx);
            return Err(Error::Sampling {
                coords: node[..grid.dim()].to_vec(),
                value: values[idx],
            });
        }
        Ok(Self {
            grid,
            values,
            time: None,
        })
    }

    pub(crate) fn from_raw(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid,
            values,
            time: None,
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::from_raw(grid, vec![0.0; grid.len()])
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        Self::from_raw(grid, vec![value; grid.len()])
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn time(&self) -> Option<f64> {
        self.time
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.time = Some(t);
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise map; the grid and time tag are kept.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            time: self.time,
        }
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_with(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> Result<ScalarField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(ScalarField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            time: self.time,
        })
    }

    /// Writes `x,value` (1-D) or `x,y,value` (2-D) rows in node order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        match self.grid.dim() {
            1 => writeln!(out, "x,value")?,
            _ => writeln!(out, "x,y,value")?,
        }
        for (idx, v) in self.values.iter().enumerate() {
            let [x, y] = self.grid.node(idx);
            match self.grid.dim() {
                1 => writeln!(out, "{x},{v}")?,
                _ => writeln!(out, "{x},{y},{v}")?,
            }
        }
        Ok(())
    }

    /// Reads a field written by [`ScalarField::write_csv`]; the grid is
    /// reconstructed from the first coordinate and the row count. Lines
    /// starting with `#` are skipped.
    pub fn read_csv<R: BufRead>(input: R) -> Result<ScalarField> {
        let mut lines = input.lines().filter(|l| !matches!(l, Ok(s) if s.starts_with('#')));
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty field file".into()))?
            .map_err(|e| Error::Format(e.to_string()))?;
        let dim = match header.trim() {
            "x,value" => 1,
            "x,y,value" => 2,
            other => return Err(Error::Format(format!("unknown field header `{other}`"))),
        };
        let mut rows = Vec::new();
        for line in lines {
            let line = line.map_err(|e| Error::Format(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let cols = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Format(format!("bad number in `{line}`: {e}")))?;
            if cols.len() != dim + 1 {
                return Err(Error::Format(format!("expected {} columns in `{line}`", dim + 1)));
            }
            rows.push(cols);
        }
        let n = match dim {
            1 => rows.len(),
            _ => (rows.len() as f64).sqrt().round() as usize,
        };
        if n == 0 || n.pow(dim as u32) != rows.len() {
            return Err(Error::Format(format!("{} rows do not form a square grid", rows.len())));
        }
        let half_width = -rows[0][0];
        let grid = Grid::new(dim, half_width, n)?;
        let values = rows.iter().map(|r| r[dim]).collect();
        ScalarField::new(grid, values)
    }
}

/// Evaluates `eval` at every node. `eval` receives the node coordinates
/// (length `dim`).
pub fn sample_field(grid: &Grid, eval: impl Fn(&[f64]) -> f64) -> Result<ScalarField> {
    let dim = grid.dim();
    let mut values = Vec::with_capacity(grid.len());
    for idx in 0..grid.len() {
        let node = grid.node(idx);
        let v = eval(&node[..dim]);
        if !v.is_finite() {
            return Err(Error::Sampling {
                coords: node[..dim].to_vec(),
                value: v,
            });
        }
        values.push(v);
    }
    Ok(ScalarField::from_raw(*grid, values))
}

/// Sum in a fixed binary-tree order, so results do not depend on how callers
/// chunk the data.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

fn transform_lines(data: &mut [Complex64], n: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    fft.process(data);
}

fn transpose(data: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = data[i * n + j];
        }
    }
    out
}

fn transform(grid: &Grid, mut data: Vec<Complex64>, inverse: bool) -> Vec<Complex64> {
    let n = grid.points_per_axis();
    transform_lines(&mut data, n, inverse);
    if grid.dim() == 2 {
        let mut t = transpose(&data, n);
        transform_lines(&mut t, n, inverse);
        data = transpose(&t, n);
    }
    data
}

/// Relative level of the roundoff filter applied before differentiation.
pub const FILTER_LEVEL: f64 = 64.0 * f64::EPSILON;

/// Fourier coefficients of a field (unnormalised forward DFT).
#[derive(Debug, Clone)]
pub struct Spectrum {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn of(u: &ScalarField) -> Spectrum {
        let data = u.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Spectrum {
            grid: u.grid,
            coeffs: transform(&u.grid, data, false),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Multiplies mode `(m_x, m_y)` by `multiplier(ξ, nyquist)` where `ξ` holds
    /// the wavenumbers per axis and `nyquist` flags Nyquist bins.
    pub fn apply(&self, multiplier: impl Fn([f64; 2], [bool; 2]) -> Complex64) -> Spectrum {
        let g = &self.grid;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                let [a, b] = g.axis_indices(idx);
                let (xi, nyq) = match g.dim() {
                    1 => ([g.wavenumber(a), 0.0], [g.is_nyquist(a), false]),
                    _ => (
                        [g.wavenumber(a), g.wavenumber(b)],
                        [g.is_nyquist(a), g.is_nyquist(b)],
                    ),
                };
                c * multiplier(xi, nyq)
            })
            .collect();
        Spectrum {
            grid: self.grid,
            coeffs,
        }
    }

    /// Inverse transform (carries `1/N^dim`), keeping the real part.
    pub fn to_field(&self) -> ScalarField {
        let scale = 1.0 / self.grid.len() as f64;
        let data = transform(&self.grid, self.coeffs.clone(), true);
        ScalarField::from_raw(self.grid, data.iter().map(|c| c.re * scale).collect())
    }

    /// Zeroes coefficients below `FILTER_LEVEL · max|c|`, which are pure
    /// transform roundoff and would otherwise be amplified by high-order
    /// derivative multipliers.
    pub fn filtered(mut self) -> Spectrum {
        let peak = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        let floor = FILTER_LEVEL * peak;
        for c in &mut self.coeffs {
            if c.norm() <= floor {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        self
    }

    /// Evolution by `exp(−|ξ|⁴ t)`.
    pub fn evolved(&self, t: f64) -> Spectrum {
        self.apply(|xi, _| {
            let k2 = xi[0] * xi[0] + xi[1] * xi[1];
            Complex64::new((-k2 * k2 * t).exp(), 0.0)
        })
    }
}

fn ik_power(xi: f64, order: usize, nyquist: bool) -> Complex64 {
    if order == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if nyquist && order % 2 == 1 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new(0.0, xi).powu(order as u32)
}

/// `Δ^k u` via the multiplier `(−|ξ|²)^k`; `k = 0` returns `u` unchanged.
pub fn iterated_laplacian(u: &ScalarField, k: usize) -> ScalarField {
    if k == 0 {
        return u.clone();
    }
    let out = Spectrum::of(u)
        .filtered()
        .apply(|xi, _| {
            let k2 = xi[0] * xi[0] + xi[1] * xi[1];
            Complex64::new((-k2).powi(k as i32), 0.0)
        })
        .to_field();
    ScalarField { time: u.time, ..out }
}

/// Mixed partial derivative `∂x^{ox} ∂y^{oy} u` (`oy` ignored in 1-D).
pub fn partial_derivative(u: &ScalarField, orders: [usize; 2]) -> ScalarField {
    if orders == [0, 0] {
        return u.clone();
    }
    let dim = u.grid.dim();
    let out = Spectrum::of(u)
        .filtered()
        .apply(|xi, nyq| {
            let mut m = ik_power(xi[0], orders[0], nyq[0]);
            if dim == 2 {
                m *= ik_power(xi[1], orders[1], nyq[1]);
            }
            m
        })
        .to_field();
    ScalarField { time: u.time, ..out }
}

/// Gradient components, one field per axis.
pub fn gradient(u: &ScalarField) -> Vec<ScalarField> {
    match u.grid.dim() {
        1 => vec![partial_derivative(u, [1, 0])],
        _ => vec![partial_derivative(u, [1, 0]), partial_derivative(u, [0, 1])],
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Pointwise Euclidean norm `|∇^i u|` of the full `i`-th derivative tensor.
pub fn derivative_norms(u: &ScalarField, order: usize) -> ScalarField {
    match u.grid.dim() {
        1 => partial_derivative(u, [order, 0]).map(f64::abs),
        _ => {
            let mut acc = vec![0.0; u.grid.len()];
            for a in 0..=order {
                let w = binomial(order, a);
                let d = partial_derivative(u, [a, order - a]);
                for (s, v) in acc.iter_mut().zip(d.values()) {
                    *s += w * v * v;
                }
            }
            ScalarField {
                grid: u.grid,
                values: acc.into_iter().map(f64::sqrt).collect(),
                time: u.time,
            }
        }
    }
}

/// Rectangle rule `h^dim Σ u_j` (exact for trigonometric polynomials of
/// degree below `N`).
pub fn integrate(u: &ScalarField) -> f64 {
    u.grid.cell_volume() * pairwise_sum(&u.values)
}

/// `∫ u²` evaluated from the Fourier coefficients (Plancherel).
pub fn spectral_energy(u: &ScalarField) -> f64 {
    let spec = Spectrum::of(u);
    let sq: Vec<f64> = spec.coeffs.iter().map(|c| c.norm_sqr()).collect();
    u.grid.cell_volume() * pairwise_sum(&sq) / u.grid.len() as f64
}

/// Exact solution of `∂t u = −Δ²u` on the torus at time `t ≥ 0`.
pub fn evolve(u: &ScalarField, t: f64) -> Result<ScalarField> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::param(
            "t",
            format!("evolution time must be finite and non-negative (backward flow is ill-posed), got {t}"),
        ));
    }
    let base = u.time.unwrap_or(0.0);
    if t == 0.0 {
        return Ok(u.clone().with_time(base));
    }
    Ok(Spectrum::of(u).evolved(t).to_field().with_time(base + t))
}

/// Snapshots of the flow from a common initial field.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    initial: ScalarField,
    times: Vec<f64>,
    snapshots: Vec<ScalarField>,
}

impl FlowTrajectory {
    pub fn initial(&self) -> &ScalarField {
        &self.initial
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn snapshots(&self) -> &[ScalarField] {
        &self.snapshots
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &ScalarField)> {
        self.times.iter().copied().zip(self.snapshots.iter())
    }

    pub fn final_time(&self) -> Option<f64> {
        self.times.last().copied()
    }
}

/// `snapshots[i] = evolve(u0, times[i])`; one forward transform is shared by
/// all snapshots.
pub fn run_trajectory(u0: &ScalarField, times: &[f64]) -> Result<FlowTrajectory> {
    if times.is_empty() {
        return Err(Error::param("times", "at least one time is required"));
    }
    if times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(Error::param("times", "times must be finite and non-negative"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("times", "times must be strictly increasing"));
    }
    let spec = Spectrum::of(u0);
    let snapshots = times
        .iter()
        .map(|&t| {
            if t == 0.0 {
                u0.clone().with_time(0.0)
            } else {
                spec.evolved(t).to_field().with_time(t)
            }
        })
        .collect();
    Ok(FlowTrajectory {
        initial: u0.clone(),
        times: times.to_vec(),
        snapshots,
    })
}

/// Seeded band-limited random field: every mode with `1 ≤ |m|_∞ ≤ max_mode`
/// gets a standard normal coefficient scaled by `|ξ|^{−2}`; the mean is zero.
pub fn band_limited_random(grid: &Grid, max_mode: usize, seed: u64) -> Result<ScalarField> {
    let n = grid.points_per_axis();
    if max_mode == 0 || max_mode >= n / 2 {
        return Err(Error::param(
            "max_mode",
            format!("must lie in 1..{}, got {max_mode}", n / 2),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    let bin = |m: isize| -> usize { m.rem_euclid(n as isize) as usize };
    let mm = max_mode as isize;
    // Draw coefficients for a half-space of modes and mirror them so the
    // field is real.
    let draw = |rng: &mut ChaCha8Rng, xi2: f64| -> Complex64 {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) / xi2
    };
    let scale = grid.len() as f64 / 2.0;
    match grid.dim() {
        1 => {
            for m in 1..=mm {
                let xi = grid.wavenumber(bin(m));
                let c = draw(&mut rng, xi * xi) * scale;
                coeffs[bin(m)] = c;
                coeffs[bin(-m)] = c.conj();
            }
        }
        _ => {
            for mx in -mm..=mm {
                for my in -mm..=mm {
                    let positive = mx > 0 || (mx == 0 && my > 0);
                    if !positive {
                        continue;
                    }
                    let (a, b) = (bin(mx), bin(my));
                    let xi2 = grid.wavenumber(a).powi(2) + grid.wavenumber(b).powi(2);
                    let c = draw(&mut rng, xi2) * scale;
                    coeffs[a * n + b] = c;
                    coeffs[bin(-mx) * n + bin(-my)] = c.conj();
                }
            }
        }
    }
    Ok(Spectrum {
        grid: *grid,
        coeffs,
    }
    .to_field())
}

/// Re-samples a band-limited field on a finer grid of the same box by
/// zero-padding its spectrum (the Nyquist bin is split symmetrically).
pub fn refine_field(u: &ScalarField) -> ScalarField {
    let g = *u.grid();
    let fine = g.refined();
    let n = g.points_per_axis();
    let nf = fine.points_per_axis();
    let spec = Spectrum::of(u);
    let map = |m: usize| -> Vec<(usize, f64)> {
        if m < n / 2 {
            vec![(m, 1.0)]
        } else if m == n / 2 {
            vec![(m, 0.5), (nf - m, 0.5)]
        } else {
            vec![(nf - (n - m), 1.0)]
        }
    };
    let mut coeffs = vec![Complex64::new(0.0, 0.0); fine.len()];
    let factor = fine.len() as f64 / g.len() as f64;
    for (idx, &c) in spec.coeffs.iter().enumerate() {
        let [a, b] = g.axis_indices(idx);
        for (fa, wa) in map(a) {
            if g.dim() == 1 {
                coeffs[fa] += c * wa * factor;
            } else {
                for (fb, wb) in map(b) {
                    coeffs[fa * nf + fb] += c * wa * wb * factor;
                }
            }
        }
    }
    let out = Spectrum {
        grid: fine,
        coeffs,
    }
    .to_field();
    ScalarField { time: u.time, ..out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sine_grid(n: usize) -> Grid {
        Grid::new(1, PI, n).unwrap()
    }

    #[test]
    fn grid_spacing_and_errors() {
        assert_eq!(make_grid(1, PI, 8).unwrap().spacing(), PI / 4.0);
        assert_eq!(make_grid(1, 10.0, 512).unwrap().spacing(), 20.0 / 512.0);
        for (dim, l, n, field) in [(1, 10.0, 7, "N"), (1, 10.0, 6, "N"), (1, 0.0, 8, "L"), (3, 1.0, 8, "dim")] {
            match make_grid(dim, l, n) {
                Err(Error::Parameter { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected parameter error, got {other:?}"),
            }
        }
    }

    #[test]
    fn sampling() {
        let g = sine_grid(8);
        let ones = sample_field(&g, |_| 1.0).unwrap();
        assert!(ones.values().iter().all(|&v| v == 1.0));
        let s = sample_field(&g, |x| x[0].sin()).unwrap();
        for (j, v) in s.values().iter().enumerate() {
            assert_eq!(*v, (-PI + j as f64 * PI / 4.0).sin());
        }
        match sample_field(&g, |x| if x[0] == 0.0 { f64::NAN } else { 1.0 }) {
            Err(Error::Sampling { coords, .. }) => assert_eq!(coords, vec![0.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn laplacian_eigenfunctions() {
        let g = sine_grid(64);
        let c = ScalarField::constant(g, 3.0);
        assert!(iterated_laplacian(&c, 1).max_abs() < 1e-12);
        let s = sample_field(&g, |x| x[0].sin()).unwrap();
        let ls = iterated_laplacian(&s, 1);
        for (a, b) in ls.values().iter().zip(s.values()) {
            assert!((a + b).abs() < 1e-12);
        }
        let s2 = sample_field(&g, |x| (2.0 * x[0]).sin()).unwrap();
        let l2 = iterated_laplacian(&s2, 2);
        for (a, b) in l2.values().iter().zip(s2.values()) {
            assert!((a - 16.0 * b).abs() < 1e-10);
        }
        assert_eq!(iterated_laplacian(&s, 0), s);
    }

    #[test]
    fn derivative_norm_orders() {
        let g = sine_grid(64);
        let s = sample_field(&g, |x| x[0].sin()).unwrap();
        let d2 = derivative_norms(&s, 2);
        let d3 = derivative_norms(&s, 3);
        for idx in 0..g.len() {
            let x = g.coordinate(idx);
            assert!((d2.values()[idx] - x.sin().abs()).abs() < 1e-12);
            assert!((d3.values()[idx] - x.cos().abs()).abs() < 1e-12);
        }
        assert!(derivative_norms(&ScalarField::constant(g, 2.0), 1).max_abs() < 1e-12);
    }

    #[test]
    fn quadrature_on_the_torus() {
        let g = sine_grid(64);
        assert!((integrate(&ScalarField::constant(g, 1.0)) - 2.0 * PI).abs() < 1e-12);
        let s = sample_field(&g, |x| x[0].sin()).unwrap();
        assert!(integrate(&s).abs() < 1e-12);
        let s2 = s.map(|v| v * v);
        assert!((integrate(&s2) - PI).abs() < 1e-12);
    }

    #[test]
    fn evolution_examples() {
        let g = sine_grid(64);
        let s = sample_field(&g, |x| x[0].sin()).unwrap();
        assert_eq!(evolve(&s, 0.0).unwrap().values(), s.values());
        let c = ScalarField::constant(g, 1.5);
        let ce = evolve(&c, 7.0).unwrap();
        assert!(ce.values().iter().all(|v| (v - 1.5).abs() < 1e-14));
        let e1 = evolve(&s, 1.0).unwrap();
        for (a, b) in e1.values().iter().zip(s.values()) {
            assert!((a - (-1.0f64).exp() * b).abs() < 1e-12);
        }
        assert!(evolve(&s, -0.1).is_err());
    }

    #[test]
    fn trajectory_examples() {
        let g = sine_grid(64);
        let s = sample_field(&g, |x| x[0].sin()).unwrap();
        let tr = run_trajectory(&s, &[0.0]).unwrap();
        assert_eq!(tr.snapshots()[0].values(), s.values());
        let tr = run_trajectory(&s, &[0.5, 1.0]).unwrap();
        for (snap, t) in tr.snapshots().iter().zip([0.5f64, 1.0]) {
            for (a, b) in snap.values().iter().zip(s.values()) {
                assert!((a - (-t).exp() * b).abs() < 1e-12);
            }
        }
        assert!(run_trajectory(&s, &[1.0, 0.5]).is_err());
        assert!(run_trajectory(&s, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn two_dimensional_laplacian() {
        let g = Grid::new(2, PI, 32).unwrap();
        let u = sample_field(&g, |x| x[0].sin() * (2.0 * x[1]).cos()).unwrap();
        let lu = iterated_laplacian(&u, 1);
        for (a, b) in lu.values().iter().zip(u.values()) {
            assert!((a + 5.0 * b).abs() < 1e-11);
        }
        // |∇u|² = cos²x cos²2y + 4 sin²x sin²2y
        let gn = derivative_norms(&u, 1);
        for idx in 0..g.len() {
            let [x, y] = g.node(idx);
            let exact = ((x.cos() * (2.0 * y).cos()).powi(2) + 4.0 * (x.sin() * (2.0 * y).sin()).powi(2)).sqrt();
            assert!((gn.values()[idx] - exact).abs() < 1e-11);
        }
    }

    #[test]
    fn csv_round_trip() {
        let g = Grid::new(1, 2.0, 8).unwrap();
        let u = sample_field(&g, |x| x[0] * x[0]).unwrap();
        let mut buf = Vec::new();
        u.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,value\n-2,4\n"));
        let back = ScalarField::read_csv(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn refinement_preserves_band_limited_fields() {
        let g = Grid::new(1, 10.0, 64).unwrap();
        let u = band_limited_random(&g, 8, 3).unwrap();
        let fine = refine_field(&u);
        for j in 0..g.len() {
            assert!((fine.values()[2 * j] - u.values()[j]).abs() < 1e-12);
        }
        assert!((integrate(&fine.map(|v| v * v)) - integrate(&u.map(|v| v * v))).abs() < 1e-12);
    }
}
