//! Seeded suites. Every case derives its own seed from the suite seed, runs
//! independently, and reports are collected in case order.

use std::fmt;

use rayon::prelude::*;

use crate::error::Result;
use crate::harness::checks::{
    check_cy, check_growth, check_growth_pointwise, check_interp1, check_interp2, check_lm1, check_main3,
    check_theorem1_region, cross_validate_bump, identity_terms, uniqueness_experiment, CyVariant, GridSolution,
    RegionScan, TychonoffSolution,
};
use crate::harness::report::CheckReport;
use crate::quantities::{make_cutoff, Cutoff, ZeroSolution};
use crate::spectral::{
    band_limited_random, derivative_norms, refine_field, run_trajectory, sample_field, Grid, ScalarField,
};
use crate::stepexample::{analysis, StepSolution};
use crate::tychonoff::{eval_u, hypothesis_violation_scan, TychonoffParams};

/// Named suites accepted by `biharm verify --suite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lm1,
    Interp1,
    Interp2,
    Cy1,
    Cy2,
    Growth,
    Theorem1,
    Uniqueness,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Lm1,
        Suite::Interp1,
        Suite::Interp2,
        Suite::Cy1,
        Suite::Cy2,
        Suite::Growth,
        Suite::Theorem1,
        Suite::Uniqueness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lm1 => "lm1",
            Suite::Interp1 => "interp1",
            Suite::Interp2 => "interp2",
            Suite::Cy1 => "cy1",
            Suite::Cy2 => "cy2",
            Suite::Growth => "growth",
            Suite::Theorem1 => "theorem1",
            Suite::Uniqueness => "uniqueness",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Seed of case `index` within a suite run with `seed`.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(index as u64)
}

/// Band-limited random field with modes up to `N/8`, scaled to `max|u| = 1`.
pub fn normalized_random(grid: &Grid, seed: u64) -> Result<ScalarField> {
    let u = band_limited_random(grid, grid.points_per_axis() / 8, seed)?;
    let m = u.max_abs();
    Ok(u.map(|v| v / m))
}

/// Runs `check`; on failure repeats it once on the refined grid (same
/// band-limited field, cutoff rebuilt) and keeps the refined outcome.
fn with_refinement(
    u: &ScalarField,
    center: f64,
    rho: f64,
    s: f64,
    check: impl Fn(&ScalarField, &Cutoff) -> Result<CheckReport>,
) -> Result<CheckReport> {
    let cutoff = make_cutoff(u.grid(), &[center], rho, s)?;
    let report = check(u, &cutoff)?;
    if report.pass {
        return Ok(report);
    }
    let fine = refine_field(u);
    let cutoff = make_cutoff(fine.grid(), &[center], rho, s)?;
    Ok(check(&fine, &cutoff)?
        .param("refined", true)
        .param("coarse_margin", report.margin))
}

/// Runs one suite (or all of them, in a fixed order).
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<CheckReport>> {
    match suite {
        Suite::Lm1 => lm1(seed),
        Suite::Interp1 => interp1(seed),
        Suite::Interp2 => interp2(seed),
        Suite::Cy1 => cy(seed, CyVariant::Cy1),
        Suite::Cy2 => cy(seed, CyVariant::Cy2),
        Suite::Growth => growth(),
        Suite::Theorem1 => theorem1(),
        Suite::Uniqueness => uniqueness(seed),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s, seed)?);
            }
            Ok(all)
        }
    }
}

pub const LM1_FIELDS: usize = 50;
/// Largest radius whose support `2ρ` fits in `L/2` on `L = 10`.
pub const LM1_RHO: f64 = 2.5;
pub const INTERP_FIELDS: usize = 100;
pub const CY_TRAJECTORIES: usize = 20;

/// Localised energy identity on 50 fields at `N = 512`, `L = 10`, plus the
/// residual decrease under grid doubling.
pub fn lm1(seed: u64) -> Result<Vec<CheckReport>> {
    let grid = Grid::new(1, 10.0, 512)?;
    let cases: Vec<(usize, usize)> = (0..LM1_FIELDS).flat_map(|i| (0..=2).map(move |k| (i, k))).collect();
    let mut reports: Vec<CheckReport> = cases
        .par_iter()
        .map(|&(i, k)| {
            let s = case_seed(seed, i);
            let u = normalized_random(&grid, s)?;
            let cutoff = make_cutoff(&grid, &[0.0], LM1_RHO, 9.0)?;
            Ok(check_lm1(&u, &cutoff, k)?.seed(s))
        })
        .collect::<Result<_>>()?;
    reports.extend(lm1_convergence(seed)?);
    Ok(reports)
}

/// Residual at the reference grid versus the same field on the doubled grid.
pub fn lm1_convergence(seed: u64) -> Result<Vec<CheckReport>> {
    let coarse_grid = Grid::new(1, 10.0, 512)?;
    (0..=2)
        .map(|k| {
            let s = case_seed(seed, k);
            let coarse = normalized_random(&coarse_grid, s)?;
            let fine = refine_field(&coarse);
            let rc = identity_terms(&coarse, &make_cutoff(coarse.grid(), &[0.0], LM1_RHO, 9.0)?, k)?.relative_residual();
            let rf = identity_terms(&fine, &make_cutoff(fine.grid(), &[0.0], LM1_RHO, 9.0)?, k)?.relative_residual();
            Ok(CheckReport::inequality("lm1/convergence", 4.0 * rf, rc, 0.0)
                .param("k", k)
                .param("coarse_N", 512)
                .param("coarse_residual", rc)
                .param("fine_residual", rf)
                .seed(s))
        })
        .collect()
}

/// The parameter grid of the interpolation suites on `L = 16`, `N = 512`.
fn interp_grid() -> Result<Grid> {
    Grid::new(1, 16.0, 512)
}

pub fn interp1(seed: u64) -> Result<Vec<CheckReport>> {
    let grid = interp_grid()?;
    let mut cases = Vec::new();
    for i in 0..INTERP_FIELDS {
        for k in [1usize, 2] {
            for s in [9.0, 12.0] {
                for delta0 in [0.1, 1.0] {
                    for rho in [2.0, 4.0] {
                        cases.push((i, k, s, delta0, rho));
                    }
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(i, k, s, delta0, rho)| {
            let sd = case_seed(seed, i);
            let u = normalized_random(&grid, sd)?;
            Ok(with_refinement(&u, 0.0, rho, s, |u, c| check_interp1(u, k, s, delta0, c))?.seed(sd))
        })
        .collect()
}

pub fn interp2(seed: u64) -> Result<Vec<CheckReport>> {
    let grid = interp_grid()?;
    let mut cases = Vec::new();
    for i in 0..INTERP_FIELDS {
        for (k, s) in [(2usize, 12.0), (1, 9.0)] {
            for delta in [0.1, 1.0] {
                for rho in [2.0, 4.0] {
                    cases.push((i, k, s, delta, rho));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(i, k, s, delta, rho)| {
            let sd = case_seed(seed, i);
            let u = normalized_random(&grid, sd)?;
            Ok(with_refinement(&u, 0.0, rho, s, |u, c| check_interp2(u, k, s, delta, c))?.seed(sd))
        })
        .collect()
}

pub const CY_TIMES: [f64; 3] = [0.0, 0.1, 0.5];

/// Differential inequalities along 20 seeded trajectories, `k = 1`, `s = 13`.
pub fn cy(seed: u64, variant: CyVariant) -> Result<Vec<CheckReport>> {
    let grid = interp_grid()?;
    let per_case: Vec<Vec<CheckReport>> = (0..CY_TRAJECTORIES)
        .into_par_iter()
        .map(|i| {
            let sd = case_seed(seed, i);
            let u = normalized_random(&grid, sd)?;
            let cutoff = make_cutoff(&grid, &[0.0], 2.0, 13.0)?;
            let reports = check_cy(&u, &cutoff, 1, 13.0, variant, &CY_TIMES)?;
            if reports.iter().all(|r| r.pass) {
                return Ok(reports.into_iter().map(|r| r.seed(sd)).collect());
            }
            let fine = refine_field(&u);
            let cutoff = make_cutoff(fine.grid(), &[0.0], 2.0, 13.0)?;
            Ok(check_cy(&fine, &cutoff, 1, 13.0, variant, &CY_TIMES)?
                .into_iter()
                .map(|r| r.param("refined", true).seed(sd))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_case.into_iter().flatten().collect())
}

/// Sampling times for the step's blow-up curve.
pub const BLOWUP_TIMES: [f64; 4] = [0.1, 0.3, 1.0, 3.0];

pub fn growth() -> Result<Vec<CheckReport>> {
    let grid = Grid::new(1, std::f64::consts::PI, 64)?;
    let zero = run_trajectory(&ScalarField::zeros(grid), &[0.0, 0.5, 1.0])?;
    let sin = run_trajectory(&sample_field(&grid, |x| x[0].sin())?, &[0.0, 0.25, 0.5, 1.0, 2.0])?;
    let k0 = 0.5 / std::f64::consts::E;
    let a = analysis();
    let points: Vec<(f64, f64)> = BLOWUP_TIMES.iter().map(|&s| (s.powf(0.25) * a.xi_star, s)).collect();
    let mut step = check_growth_pointwise(&StepSolution { interface: 0.0 }, &points, a.k0_star)?;
    step.tolerance = 1e-8 * a.k0_star;
    step.pass = step.margin >= -step.tolerance;
    Ok(vec![
        check_growth(&zero, 0.0)?.param("data", "zero"),
        check_growth(&sin, k0)?.param("data", "sin").param("k0", k0),
        step.param("data", "step").param("k0", a.k0_star),
    ])
}

/// `x` samples of `[−1, 1]` with `2·per_unit + 1` points.
pub fn region_x_grid(per_unit: usize) -> Vec<f64> {
    let n = 2 * per_unit;
    (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).collect()
}

/// Log-spaced times on `[1e−6, 1e2]` with `per_decade` points per decade.
pub fn region_t_grid(per_decade: usize) -> Vec<f64> {
    let n = 8 * per_decade;
    (0..=n).map(|i| 10f64.powf(-6.0 + i as f64 / per_decade as f64)).collect()
}

/// Minimal empirical `N` for the step with its interface on `∂B₁`, at three
/// sampling resolutions.
pub fn step_minimal_n() -> Result<[f64; 3]> {
    let step = StepSolution { interface: -1.0 };
    let mut out = [0.0; 3];
    for (level, slot) in out.iter_mut().enumerate() {
        let f = 1 << level;
        *slot = RegionScan::new(&step, &region_t_grid(10 * f), &region_x_grid(100 * f))?.minimal_n();
    }
    Ok(out)
}

pub fn theorem1() -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    let ns = step_minimal_n()?;
    for (i, pair) in ns.windows(2).enumerate() {
        let change = (pair[1] - pair[0]).abs() / pair[1];
        reports.push(
            CheckReport::inequality("theorem1/stability", change, 0.05, 0.0)
                .param("refinement", i + 1)
                .param("coarse_N", pair[0])
                .param("fine_N", pair[1]),
        );
    }
    let step = StepSolution { interface: -1.0 };
    let n = ns[2];
    let (ts, xs) = (region_t_grid(40), region_x_grid(400));
    let (r, _) = check_theorem1_region(&step, n, &ts, &xs)?;
    reports.push(r.param("data", "step"));
    let (r, _) = check_theorem1_region(&ZeroSolution, 1.0, &ts, &xs)?;
    reports.push(r.param("data", "zero"));

    let ty = TychonoffSolution {
        params: TychonoffParams::default(),
    };
    let ty_t: Vec<f64> = (1..=10).map(|i| 0.1 * i as f64).collect();
    let ty_x = region_x_grid(10);
    let scan = RegionScan::new(&ty, &ty_t, &ty_x)?;
    let sup = scan.sup_e(1.0);
    reports.push(
        CheckReport::inequality("theorem1/tychonoff_finite", sup, f64::MAX, 0.0)
            .param("data", "tychonoff")
            .param("N", 1.0),
    );

    let (ts, xs) = (region_t_grid(10), region_x_grid(100));
    reports.push(check_main3(&ZeroSolution, 0.0, 1.0, &ts, &xs)?.param("data", "zero"));
    reports.push(check_main3(&step, 1.0, n, &ts, &xs)?.param("data", "step").param("informational", true));
    reports.push(bump_main3()?);
    Ok(reports)
}

/// Smooth bump data with `k1` measured by spectral differentiation on `B₁`.
fn bump_main3() -> Result<CheckReport> {
    let grid = Grid::new(1, 16.0, 1024)?;
    let u0 = sample_field(&grid, |x| crate::harness::checks::bump(x[0], 2.0))?;
    let inside: Vec<usize> = (0..grid.len()).filter(|&j| grid.coordinate(j).abs() <= 1.0).collect();
    let mut sums = vec![0.0; grid.len()];
    for (j, v) in u0.values().iter().enumerate() {
        sums[j] = v * v;
    }
    for order in 1..=5 {
        let d = derivative_norms(&u0, order);
        for (s, v) in sums.iter_mut().zip(d.values()) {
            *s += v * v;
        }
    }
    let k1 = inside.iter().fold(0.0f64, |m, &j| m.max(sums[j]));
    let xs: Vec<f64> = inside.iter().map(|&j| grid.coordinate(j)).collect();
    let ts: Vec<f64> = (0..=40).map(|i| 10f64.powf(-4.0 + i as f64 / 10.0)).collect();
    let solution = GridSolution::new(u0)?;
    Ok(check_main3(&solution, k1, 1.0, &ts, &xs)?.param("data", "bump"))
}

pub fn uniqueness(seed: u64) -> Result<Vec<CheckReport>> {
    let grid = Grid::new(1, 10.0, 512)?;
    let times = [0.0, 0.01, 0.1, 0.25, 0.5, 1.0];
    let per_case: Vec<Vec<CheckReport>> = (0..5)
        .into_par_iter()
        .map(|i| {
            let sd = case_seed(seed, i);
            let u = normalized_random(&grid, sd)?;
            let out = uniqueness_experiment(&u, &times)?;
            Ok(vec![out.determinism.seed(sd), out.dissipation.seed(sd)])
        })
        .collect::<Result<_>>()?;
    let mut reports: Vec<CheckReport> = per_case.into_iter().flatten().collect();

    let params = TychonoffParams::default();
    let v = eval_u(1.5, 1.0, &params)?;
    reports.push(
        CheckReport::inequality("uniqueness/tychonoff_nonzero", 10.0 * v.tail_bound, v.value.abs(), 0.0)
            .param("x", 1.5)
            .param("t", 1.0)
            .param("tail_bound", v.tail_bound),
    );
    let rows = hypothesis_violation_scan(0.5, &[0.0, 1.0, 2.0, 3.0], &params)?;
    let factor = rows[3].monitor / rows[2].monitor;
    reports.push(
        CheckReport::inequality("uniqueness/growth_violation", 10.0, factor, 0.0)
            .param("t", 0.5)
            .param("monitor_x2", rows[2].monitor)
            .param("monitor_x3", rows[3].monitor),
    );
    let sup = cross_validate_bump(40.0, 4096, 0.5, 10.0)?;
    reports.push(CheckReport::inequality("uniqueness/solver_agreement", sup, 1e-6, 0.0).param("t", 0.5));
    Ok(reports)
}
