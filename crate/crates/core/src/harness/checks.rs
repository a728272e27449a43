//! Individual checks. Time derivatives of energies always come from the
//! evolution equation, `d/dt ∫(Δ^k u)² η = −2∫ Δ^k u Δ^{k+2} u η`.

use crate::error::{Error, Result};
use crate::harness::constants::{c3, c4, c_delta, c_hat};
use crate::harness::report::CheckReport;
use crate::kernel::{convolve_initial, CompactTabulation, InitialData};
use crate::quantities::{transition, weighted_energy_with, weighted_integral, Cutoff, PointwiseSolution};
use crate::spectral::{evolve, gradient, integrate, iterated_laplacian, run_trajectory, sample_field, FlowTrajectory, Grid, ScalarField};
use crate::stepexample::step_u;
use crate::tychonoff::{self, TychonoffParams};

use std::sync::Mutex;

fn same_grid(u: &ScalarField, cutoff: &Cutoff) -> Result<()> {
    if u.grid() != cutoff.grid() {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// The four integrals of the localised energy identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityTerms {
    /// `−2∫Δ^k u Δ^{k+2} u η + 2∫(Δ^{k+1}u)² η`.
    pub lhs: f64,
    /// `−2∫Δ^{k+1}u ∇Δ^k u·∇η + 2∫Δ^k u ∇Δ^{k+1}u·∇η`.
    pub rhs: f64,
    /// Sum of the magnitudes of the four integrals.
    pub scale: f64,
}

impl IdentityTerms {
    pub fn relative_residual(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            (self.lhs - self.rhs).abs() / self.scale
        }
    }
}

fn dot_integral(f: &ScalarField, grads: &[ScalarField], weights: &[ScalarField]) -> f64 {
    grads
        .iter()
        .zip(weights)
        .map(|(g, w)| {
            let prod = f
                .zip_with(g, |a, b| a * b)
                .and_then(|p| p.zip_with(w, |a, b| a * b))
                .expect("fields share a grid");
            integrate(&prod)
        })
        .sum()
}

pub fn identity_terms(u: &ScalarField, cutoff: &Cutoff, k: usize) -> Result<IdentityTerms> {
    same_grid(u, cutoff)?;
    let a = iterated_laplacian(u, k);
    let b = iterated_laplacian(&a, 1);
    let c = iterated_laplacian(&b, 1);
    let eta = cutoff.eta();
    let grad_eta = cutoff.grad_eta();
    let t1 = -2.0 * weighted_integral(&a.zip_with(&c, |x, y| x * y)?, &eta)?;
    let t2 = 2.0 * weighted_integral(&b.map(|x| x * x), &eta)?;
    let r1 = -2.0 * dot_integral(&b, &gradient(&a), &grad_eta);
    let r2 = 2.0 * dot_integral(&a, &gradient(&b), &grad_eta);
    Ok(IdentityTerms {
        lhs: t1 + t2,
        rhs: r1 + r2,
        scale: t1.abs() + t2.abs() + r1.abs() + r2.abs(),
    })
}

/// Localised energy identity at relative tolerance `1e−8`.
pub fn check_lm1(u: &ScalarField, cutoff: &Cutoff, k: usize) -> Result<CheckReport> {
    let terms = identity_terms(u, cutoff, k)?;
    Ok(CheckReport::identity("lm1", terms.lhs, terms.rhs, 1e-8 * terms.scale)
        .param("k", k)
        .param("rho", cutoff.rho)
        .param("s", cutoff.s)
        .param("N", u.grid().points_per_axis())
        .param("L", u.grid().half_width())
        .param("relative_residual", terms.relative_residual()))
}

fn interp_pre(k: usize, s: f64, delta: f64) -> Result<()> {
    if k < 1 {
        return Err(Error::param("k", "k ≥ 1 required"));
    }
    if !(delta > 0.0) {
        return Err(Error::param("delta", "δ > 0 required"));
    }
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::param("s", "s > 0 required"));
    }
    Ok(())
}

/// `∫|Δ^k u|²γ^{s−4} ≤ δ0ρ⁴∫|Δ^{k+1}u|²γ^s + (c_δ0/ρ⁴)∫|Δ^{k−1}u|²γ^{s−8}`.
pub fn check_interp1(u: &ScalarField, k: usize, s: f64, delta0: f64, cutoff: &Cutoff) -> Result<CheckReport> {
    interp_pre(k, s, delta0)?;
    if s <= 8.0 {
        return Err(Error::param("s", "s > 8 required"));
    }
    same_grid(u, cutoff)?;
    let rho = cutoff.rho;
    let cd = c_delta(delta0, s, cutoff.c_gamma);
    let lhs = weighted_energy_with(u, k, cutoff, s - 4.0)?;
    let high = weighted_energy_with(u, k + 1, cutoff, s)?;
    let low = weighted_energy_with(u, k - 1, cutoff, s - 8.0)?;
    let rhs = delta0 * rho.powi(4) * high + cd / rho.powi(4) * low;
    Ok(CheckReport::inequality("interp1", lhs, rhs, 1e-8 * rhs.abs())
        .param("k", k)
        .param("s", s)
        .param("delta0", delta0)
        .param("rho", rho)
        .param("c_gamma", cutoff.c_gamma)
        .param("c_delta0", cd))
}

/// `∫|Δ^k u|²γ^{s−4} ≤ δρ⁴∫|Δ^{k+1}u|²γ^s + (ĉ/ρ^{4k−4})∫|Δu|²γ^{s−4k}`.
pub fn check_interp2(u: &ScalarField, k: usize, s: f64, delta: f64, cutoff: &Cutoff) -> Result<CheckReport> {
    interp_pre(k, s, delta)?;
    if s <= 4.0 * k as f64 {
        return Err(Error::param("s", "s > 4k required"));
    }
    if k >= 2 && s - 4.0 * (k as f64 - 2.0) <= 8.0 {
        return Err(Error::param("s", "s − 4(k−2) > 8 required for the induction"));
    }
    same_grid(u, cutoff)?;
    let rho = cutoff.rho;
    let ch = c_hat(delta, k, s, cutoff.c_gamma);
    let lhs = weighted_energy_with(u, k, cutoff, s - 4.0)?;
    let high = weighted_energy_with(u, k + 1, cutoff, s)?;
    let low = weighted_energy_with(u, 1, cutoff, s - 4.0 * k as f64)?;
    let rhs = delta * rho.powi(4) * high + ch / rho.powi(4 * k as i32 - 4) * low;
    Ok(CheckReport::inequality("interp2", lhs, rhs, 1e-8 * rhs.abs())
        .param("k", k)
        .param("s", s)
        .param("delta", delta)
        .param("rho", rho)
        .param("c_hat", ch))
}

/// Which localised differential inequality to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyVariant {
    /// `d/dt E^k + (3/2)E^{k+1} ≤ (c3/ρ⁸)∫|Δ^{k−1}u|²γ^{s−8}`.
    Cy1,
    /// `d/dt E^k + E^{k+1} ≤ (c4/ρ^{4k})∫|Δu|²γ^{s−4k}`.
    Cy2,
}

pub fn check_cy(
    u0: &ScalarField,
    cutoff: &Cutoff,
    k: usize,
    s: f64,
    variant: CyVariant,
    times: &[f64],
) -> Result<Vec<CheckReport>> {
    same_grid(u0, cutoff)?;
    match variant {
        CyVariant::Cy1 if s <= 8.0 || k < 1 => return Err(Error::param("s", "CY1 needs s > 8 and k ≥ 1")),
        CyVariant::Cy2 if s <= 4.0 * k as f64 || k < 1 || (k >= 2 && s <= 8.0) => {
            return Err(Error::param("s", "CY2 needs s > 4k (and s > 8 when k ≥ 2)"))
        }
        _ => {}
    }
    let rho = cutoff.rho;
    let traj = run_trajectory(u0, times)?;
    traj.iter()
        .map(|(t, u)| {
            let a = iterated_laplacian(u, k);
            let b = iterated_laplacian(&a, 1);
            let c = iterated_laplacian(&b, 1);
            let eta = cutoff.power(s);
            let de = -2.0 * weighted_integral(&a.zip_with(&c, |x, y| x * y)?, &eta)?;
            let e1 = weighted_integral(&b.map(|x| x * x), &eta)?;
            let (name, lhs, rhs, constant) = match variant {
                CyVariant::Cy1 => {
                    let c = c3(s, cutoff.c_gamma);
                    let low = weighted_energy_with(u, k - 1, cutoff, s - 8.0)?;
                    ("cy1", de + 1.5 * e1, c / rho.powi(8) * low, c)
                }
                CyVariant::Cy2 => {
                    let c = c4(k, s, cutoff.c_gamma);
                    let low = weighted_energy_with(u, 1, cutoff, s - 4.0 * k as f64)?;
                    ("cy2", de + e1, c / rho.powi(4 * k as i32) * low, c)
                }
            };
            let scale = de.abs() + e1 + rhs.abs();
            Ok(CheckReport::inequality(name, lhs, rhs, 1e-8 * scale)
                .param("t", t)
                .param("k", k)
                .param("s", s)
                .param("rho", rho)
                .param("constant", constant))
        })
        .collect()
}

/// `max_{t>0, x} t |Δu|² ≤ k0` along a trajectory.
pub fn check_growth(traj: &FlowTrajectory, k0: f64) -> Result<CheckReport> {
    let mut lhs: f64 = 0.0;
    for (t, u) in traj.iter() {
        if t <= 0.0 {
            continue;
        }
        let q = iterated_laplacian(u, 1).max_abs();
        lhs = lhs.max(t * q * q);
    }
    Ok(CheckReport::inequality("growth", lhs, k0, 4.0 * f64::EPSILON * k0.abs())
        .param("snapshots", traj.times().len()))
}

/// Growth check for a pointwise solution at the given `(x, t)` samples.
pub fn check_growth_pointwise(solution: &dyn PointwiseSolution, points: &[(f64, f64)], k0: f64) -> Result<CheckReport> {
    let mut lhs: f64 = 0.0;
    for &(x, t) in points {
        let l = solution.laplacian(x, t)?;
        lhs = lhs.max(t * l * l);
    }
    Ok(CheckReport::inequality("growth", lhs, k0, 4.0 * f64::EPSILON * k0.abs()).param("samples", points.len()))
}

/// `e = d⁴|Δu|²` sampled on a product grid inside `B̄₁`.
#[derive(Debug, Clone)]
pub struct RegionScan {
    points: Vec<(f64, f64, f64, f64)>,
}

impl RegionScan {
    /// Evaluates `d⁴(x)`, `t`, `e` and `|u|` at every `(x, t)` with `|x| ≤ 1`.
    pub fn new(solution: &dyn PointwiseSolution, t_grid: &[f64], x_grid: &[f64]) -> Result<Self> {
        let mut points = Vec::new();
        for &t in t_grid {
            if !(t > 0.0) {
                return Err(Error::param("t_grid", "times must be positive"));
            }
            for &x in x_grid {
                if x.abs() > 1.0 {
                    continue;
                }
                let d4 = (1.0 - x.abs()).powi(4);
                let lap = solution.laplacian(x, t)?;
                let u = solution.value(x, t)?;
                points.push((d4, t, d4 * lap * lap, u.abs()));
            }
        }
        Ok(Self { points })
    }

    fn region(&self, n: f64) -> impl Iterator<Item = &(f64, f64, f64, f64)> {
        self.points.iter().filter(move |(d4, t, _, _)| *d4 >= n * t && *t <= 1.0 / n)
    }

    /// `sup e` over `{d⁴ ≥ Nt, t ≤ 1/N}`.
    pub fn sup_e(&self, n: f64) -> f64 {
        self.region(n).fold(0.0, |m, p| m.max(p.2))
    }

    /// `sup |u|` over the same region.
    pub fn sup_u(&self, n: f64) -> f64 {
        self.region(n).fold(0.0, |m, p| m.max(p.3))
    }

    /// Smallest `N` (to relative precision 1e−10) with `sup_region(N) e ≤ N`.
    pub fn minimal_n(&self) -> f64 {
        let ok = |n: f64| self.sup_e(n) <= n;
        let mut hi = 1e-8;
        if ok(hi) {
            return 0.0;
        }
        while !ok(hi) {
            hi *= 2.0;
            if hi > 1e300 {
                return f64::INFINITY;
            }
        }
        let mut lo = hi / 2.0;
        while (hi - lo) > 1e-10 * hi {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

/// `e ≤ N` on the region; returns the report and the minimal empirical `N`.
pub fn check_theorem1_region(
    solution: &dyn PointwiseSolution,
    n: f64,
    t_grid: &[f64],
    x_grid: &[f64],
) -> Result<(CheckReport, f64)> {
    if !(n > 0.0) {
        return Err(Error::param("N", "N > 0 required"));
    }
    let scan = RegionScan::new(solution, t_grid, x_grid)?;
    let min_n = scan.minimal_n();
    let report = CheckReport::inequality("theorem1", scan.sup_e(n), n, 0.0)
        .param("N", n)
        .param("minimal_N", min_n)
        .param("t_points", t_grid.len())
        .param("x_points", x_grid.len());
    Ok((report, min_n))
}

/// `|u| ≤ √k1 + 1` on the region `{d⁴ ≥ Nt, t ≤ 1/N}`.
pub fn check_main3(
    solution: &dyn PointwiseSolution,
    k1: f64,
    n: f64,
    t_grid: &[f64],
    x_grid: &[f64],
) -> Result<CheckReport> {
    let scan = RegionScan::new(solution, t_grid, x_grid)?;
    Ok(CheckReport::inequality("main3", scan.sup_u(n), k1.sqrt() + 1.0, 0.0)
        .param("k1", k1)
        .param("N", n))
}

/// `exp(1 − 1/(1 − (x/r)²))` for `|x| < r`, zero outside.
pub fn bump(x: f64, radius: f64) -> f64 {
    let q = x / radius;
    if q.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - q * q)).exp()
    }
}

/// Largest difference on `|x| ≤ interior` between spectral evolution and
/// kernel convolution of the bump of radius 2.
pub fn cross_validate_bump(half_width: f64, points: usize, t: f64, interior: f64) -> Result<f64> {
    let grid = Grid::new(1, half_width, points)?;
    let u0 = sample_field(&grid, |x| bump(x[0], 2.0))?;
    let spectral = evolve(&u0, t)?;
    let tab = CompactTabulation::new(-half_width, grid.spacing(), u0.values().to_vec())?;
    let data = InitialData::Compact(tab);
    let mut sup: f64 = 0.0;
    for (j, v) in spectral.values().iter().enumerate() {
        let x = grid.coordinate(j);
        if x.abs() <= interior {
            sup = sup.max((v - convolve_initial(&data, x, t)?).abs());
        }
    }
    Ok(sup)
}

/// Largest difference on `|x| ≤ interior` between spectral evolution of a
/// step mollified over `[−width, width]` and the exact step solution.
pub fn cross_validate_mollified_step(width: f64, half_width: f64, points: usize, t: f64, interior: f64) -> Result<f64> {
    let grid = Grid::new(1, half_width, points)?;
    let u0 = sample_field(&grid, |x| transition((x[0] + width) / (2.0 * width)).0)?;
    let spectral = evolve(&u0, t)?;
    let mut sup: f64 = 0.0;
    for (j, v) in spectral.values().iter().enumerate() {
        let x = grid.coordinate(j);
        if x.abs() <= interior {
            sup = sup.max((v - step_u(x, t)?).abs());
        }
    }
    Ok(sup)
}

/// The series solution as a [`PointwiseSolution`].
#[derive(Debug, Clone, Copy)]
pub struct TychonoffSolution {
    pub params: TychonoffParams,
}

impl PointwiseSolution for TychonoffSolution {
    fn value(&self, x: f64, t: f64) -> Result<f64> {
        Ok(tychonoff::eval_u(x, t, &self.params)?.value)
    }

    fn laplacian(&self, x: f64, t: f64) -> Result<f64> {
        Ok(tychonoff::eval_derivative(x, t, (0, 2), &self.params)?.value)
    }
}

/// Spectral evolution of grid data, evaluated at grid nodes only.
#[derive(Debug)]
pub struct GridSolution {
    initial: ScalarField,
    cache: Mutex<Vec<(u64, ScalarField, ScalarField)>>,
}

impl GridSolution {
    pub fn new(initial: ScalarField) -> Result<Self> {
        if initial.grid().dim() != 1 {
            return Err(Error::param("dim", "pointwise evaluation is one-dimensional"));
        }
        Ok(Self {
            initial,
            cache: Mutex::new(Vec::new()),
        })
    }

    fn node(&self, x: f64) -> Result<usize> {
        let g = self.initial.grid();
        let j = ((x + g.half_width()) / g.spacing()).round();
        if j < 0.0 || j >= g.len() as f64 || (g.coordinate(j as usize) - x).abs() > 1e-9 * g.spacing() {
            return Err(Error::Sampling {
                coords: vec![x],
                value: f64::NAN,
            });
        }
        Ok(j as usize)
    }

    fn at(&self, x: f64, t: f64, laplacian: bool) -> Result<f64> {
        let j = self.node(x)?;
        let mut cache = self.cache.lock().expect("cache lock");
        let key = t.to_bits();
        if let Some((_, u, l)) = cache.iter().find(|(k, _, _)| *k == key) {
            return Ok(if laplacian { l.values()[j] } else { u.values()[j] });
        }
        let u = evolve(&self.initial, t)?;
        let l = iterated_laplacian(&u, 1);
        let v = if laplacian { l.values()[j] } else { u.values()[j] };
        cache.push((key, u, l));
        Ok(v)
    }
}

impl PointwiseSolution for GridSolution {
    fn value(&self, x: f64, t: f64) -> Result<f64> {
        self.at(x, t, false)
    }

    fn laplacian(&self, x: f64, t: f64) -> Result<f64> {
        self.at(x, t, true)
    }
}

/// Outcome of the uniqueness experiment.
#[derive(Debug, Clone)]
pub struct UniquenessOutcome {
    /// Single-shot versus snapshot-to-snapshot evolution.
    pub determinism: CheckReport,
    /// `∫|Δ(u − v)|²` is non-increasing for data differing by a small bump.
    pub dissipation: CheckReport,
    pub difference_energy: Vec<f64>,
}

/// Two independently composed trajectories from identical data, and the
/// decay of the difference for perturbed data.
pub fn uniqueness_experiment(u0: &ScalarField, times: &[f64]) -> Result<UniquenessOutcome> {
    let single = run_trajectory(u0, times)?;
    let mut current = u0.clone();
    let mut prev_t = 0.0;
    let mut diff: f64 = 0.0;
    for (t, snap) in single.iter() {
        current = evolve(&current, t - prev_t)?;
        prev_t = t;
        for (a, b) in current.values().iter().zip(snap.values()) {
            diff = diff.max((a - b).abs());
        }
    }
    let scale = u0.max_abs().max(1.0);
    let determinism = CheckReport::inequality("uniqueness/determinism", diff, 1e-13 * scale, 0.0)
        .param("times", times.len())
        .param("max_abs_u0", u0.max_abs());

    let grid = *u0.grid();
    let width = grid.half_width() / 8.0;
    let v0 = sample_field(&grid, |x| 1e-6 * bump(x[0], width))?.zip_with(u0, |p, u| u + p)?;
    let other = run_trajectory(&v0, times)?;
    let energies: Vec<f64> = single
        .snapshots()
        .iter()
        .zip(other.snapshots())
        .map(|(a, b)| {
            let w = b.zip_with(a, |x, y| x - y).expect("same grid");
            integrate(&iterated_laplacian(&w, 1).map(|v| v * v))
        })
        .collect();
    let worst_increase = energies.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let e0 = energies.first().copied().unwrap_or(0.0);
    let dissipation = CheckReport::inequality(
        "uniqueness/dissipation",
        worst_increase.max(if energies.len() < 2 { 0.0 } else { f64::NEG_INFINITY }),
        0.0,
        1e-9 * e0,
    )
    .param("perturbation", 1e-6)
    .param("initial_difference_energy", e0)
    .param("final_difference_energy", energies.last().copied().unwrap_or(0.0));
    Ok(UniquenessOutcome {
        determinism,
        dissipation,
        difference_energy: energies,
    })
}
