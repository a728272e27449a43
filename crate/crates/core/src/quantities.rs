//! Monitor quantities, the cutoff family and weighted energies.

use std::io::Write;

use crate::error::{Error, Result};
use crate::spectral::{derivative_norms, integrate, iterated_laplacian, Grid, ScalarField};

/// `max(1 − |x|, 0)`, the distance to the boundary of the unit ball.
pub fn dist_to_boundary(x: &[f64]) -> f64 {
    dist_to_sphere(x, 1.0)
}

/// `max(R − |x|, 0)`.
pub fn dist_to_sphere(x: &[f64], radius: f64) -> f64 {
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    (radius - r).max(0.0)
}

/// Monitor kinds. `Q = |Δu|²`, `e = d⁴Q`, `b = tQ`; the `s` variants use
/// `Q_s = (Σ_{m=1..s} |∇^m u|^{s/m})^{4/s}` in place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonitorKind {
    Q,
    E,
    B,
    Qs,
    Es,
    Bs,
}

impl MonitorKind {
    pub fn needs_time(self) -> bool {
        matches!(self, MonitorKind::B | MonitorKind::Bs)
    }

    pub fn needs_order(self) -> bool {
        matches!(self, MonitorKind::Qs | MonitorKind::Es | MonitorKind::Bs)
    }

    fn weighted_by_distance(self) -> bool {
        matches!(self, MonitorKind::E | MonitorKind::Es)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonitorField {
    pub kind: MonitorKind,
    pub s_order: Option<usize>,
    pub values: ScalarField,
    pub time: f64,
}

/// `Q_s` of a field, `s ≥ 2`. Powers are taken as `exp(q ln v)` with `0^q = 0`.
pub fn q_s(u: &ScalarField, s: usize) -> ScalarField {
    let mut acc = vec![0.0; u.grid().len()];
    for m in 1..=s {
        let norms = derivative_norms(u, m);
        let q = s as f64 / m as f64;
        for (a, v) in acc.iter_mut().zip(norms.values()) {
            if *v > 0.0 {
                *a += (q * v.ln()).exp();
            }
        }
    }
    let outer = 4.0 / s as f64;
    let values = acc
        .into_iter()
        .map(|a| if a > 0.0 { (outer * a.ln()).exp() } else { 0.0 })
        .collect();
    ScalarField::new(*u.grid(), values).expect("monitor values are finite")
}

/// Monitor relative to the unit ball.
pub fn monitor(u: &ScalarField, kind: MonitorKind, t: f64, s_order: Option<usize>) -> Result<MonitorField> {
    monitor_in_ball(u, kind, t, s_order, 1.0)
}

/// Monitor with the distance measured to the sphere of the given radius.
pub fn monitor_in_ball(
    u: &ScalarField,
    kind: MonitorKind,
    t: f64,
    s_order: Option<usize>,
    radius: f64,
) -> Result<MonitorField> {
    if kind.needs_time() && !(t > 0.0 && t.is_finite()) {
        return Err(Error::param("t", format!("b-type monitors need t > 0, got {t}")));
    }
    let core = if kind.needs_order() {
        match s_order {
            Some(s) if s >= 2 => q_s(u, s),
            Some(s) => return Err(Error::param("s_order", format!("must be ≥ 2, got {s}"))),
            None => return Err(Error::param("s_order", "required for Q_s, e_s and b_s")),
        }
    } else {
        if s_order.is_some() {
            return Err(Error::param("s_order", "only meaningful for Q_s, e_s and b_s"));
        }
        iterated_laplacian(u, 1).map(|v| v * v)
    };
    let grid = *u.grid();
    let dim = grid.dim();
    let values: Vec<f64> = core
        .values()
        .iter()
        .enumerate()
        .map(|(idx, &q)| {
            if kind.weighted_by_distance() {
                let node = grid.node(idx);
                dist_to_sphere(&node[..dim], radius).powi(4) * q
            } else if kind.needs_time() {
                t * q
            } else {
                q
            }
        })
        .collect();
    Ok(MonitorField {
        kind,
        s_order,
        values: ScalarField::new(grid, values)?,
        time: t,
    })
}

/// Name of the transition profile used by [`make_cutoff`].
pub const TRANSITION_PROFILE: &str = "phi(r) = exp(-1/r) / (exp(-1/r) + exp(-1/(1-r)))";

/// Safety factor applied to the measured derivative bounds.
pub const C_GAMMA_SAFETY: f64 = 1.05;

/// `(φ, φ′, φ″)` of the smooth transition from 0 at `r ≤ 0` to 1 at `r ≥ 1`.
pub fn transition(r: f64) -> (f64, f64, f64) {
    if r <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if r >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    // φ = 1/(1 + e^g), g = 1/r − 1/(1−r)
    let q = 1.0 - r;
    let g = 1.0 / r - 1.0 / q;
    let phi = 1.0 / (1.0 + g.exp());
    let ch = (0.5 * g).cosh();
    let w = 0.25 / (ch * ch); // φ(1 − φ)
    let dg = -1.0 / (r * r) - 1.0 / (q * q);
    let ddg = 2.0 / (r * r * r) - 2.0 / (q * q * q);
    let d1 = -w * dg;
    let d2 = -(d1 * (1.0 - 2.0 * phi) * dg + w * ddg);
    (phi, d1, d2)
}

/// `(γ, γ_r, γ_rr)` at distance `r` from the center.
fn radial(r: f64, rho: f64) -> (f64, f64, f64) {
    let (phi, d1, d2) = transition((r - rho) / rho);
    (1.0 - phi, -d1 / rho, -d2 / (rho * rho))
}

/// Frobenius norm of the Hessian of a radial function in `dim` dimensions.
fn hessian_norm(dim: usize, r: f64, gr: f64, grr: f64) -> f64 {
    if dim == 1 || r == 0.0 {
        grr.abs()
    } else {
        (grr * grr + (dim - 1) as f64 * (gr / r).powi(2)).sqrt()
    }
}

/// Fewest radii sampled across `[ρ, 2ρ]`, however coarse the grid.
pub const MIN_RADIAL_SAMPLES: usize = 256;

/// `max(ρ|∇γ|, ρ²|∇²γ|)` over radii `[ρ, 2ρ]` sampled at `spacing / oversample`
/// (at least [`MIN_RADIAL_SAMPLES`] radii).
pub fn measure_c_gamma(dim: usize, rho: f64, spacing: f64, oversample: usize) -> f64 {
    let step = spacing / oversample.max(1) as f64;
    let count = ((rho / step).ceil() as usize).max(MIN_RADIAL_SAMPLES);
    let mut sup: f64 = 0.0;
    for i in 0..=count {
        let r = rho + rho * i as f64 / count as f64;
        let (_, gr, grr) = radial(r, rho);
        sup = sup.max(rho * gr.abs()).max(rho * rho * hessian_norm(dim, r, gr, grr));
    }
    sup
}

/// A concrete cutoff `γ` with `χ_{B_ρ} ≤ γ ≤ χ_{B_{2ρ}}` and its certified
/// derivative constant.
#[derive(Debug, Clone)]
pub struct Cutoff {
    pub rho: f64,
    pub s: f64,
    pub center: Vec<f64>,
    pub gamma: ScalarField,
    /// Analytic gradient components of `γ`.
    pub gradient: Vec<ScalarField>,
    pub c_gamma: f64,
    pub transition_profile: &'static str,
}

fn support_check(grid: &Grid, center: &[f64], rho: f64) -> Result<()> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::param("rho", format!("must be positive, got {rho}")));
    }
    if center.len() != grid.dim() {
        return Err(Error::param("center", format!("needs {} coordinates", grid.dim())));
    }
    let offset = center.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if offset + 2.0 * rho > grid.half_width() / 2.0 {
        return Err(Error::param(
            "rho",
            format!(
                "support radius 2ρ = {} around the center must stay within L/2 = {}",
                2.0 * rho,
                grid.half_width() / 2.0
            ),
        ));
    }
    Ok(())
}

/// Builds `γ(x) = 1 − φ((|x − c| − ρ)/ρ)` on the grid.
pub fn make_cutoff(grid: &Grid, center: &[f64], rho: f64, s: f64) -> Result<Cutoff> {
    support_check(grid, center, rho)?;
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::param("s", format!("must be positive, got {s}")));
    }
    let dim = grid.dim();
    let mut gamma = Vec::with_capacity(grid.len());
    let mut grads = vec![Vec::with_capacity(grid.len()); dim];
    for idx in 0..grid.len() {
        let node = grid.node(idx);
        let diff: Vec<f64> = (0..dim).map(|a| node[a] - center[a]).collect();
        let r = diff.iter().map(|v| v * v).sum::<f64>().sqrt();
        let (g, gr, _) = radial(r, rho);
        gamma.push(g);
        for (a, comp) in grads.iter_mut().enumerate() {
            comp.push(if r > 0.0 { gr * diff[a] / r } else { 0.0 });
        }
    }
    let c_gamma = (C_GAMMA_SAFETY * measure_c_gamma(dim, rho, grid.spacing(), 8)).max(1.0);
    Ok(Cutoff {
        rho,
        s,
        center: center.to_vec(),
        gamma: ScalarField::new(*grid, gamma)?,
        gradient: grads
            .into_iter()
            .map(|v| ScalarField::new(*grid, v))
            .collect::<Result<_>>()?,
        c_gamma,
        transition_profile: TRANSITION_PROFILE,
    })
}

/// The degenerate cutoff `γ ≡ 1` on the whole torus (`∇γ = 0`, `c_γ = 1`).
pub fn unit_cutoff(grid: &Grid, s: f64) -> Cutoff {
    Cutoff {
        rho: grid.half_width(),
        s,
        center: vec![0.0; grid.dim()],
        gamma: ScalarField::constant(*grid, 1.0),
        gradient: (0..grid.dim()).map(|_| ScalarField::zeros(*grid)).collect(),
        c_gamma: 1.0,
        transition_profile: "constant 1",
    }
}

impl Cutoff {
    pub fn grid(&self) -> &Grid {
        self.gamma.grid()
    }

    /// `γ^e` with `0^e = 0` for `e > 0` and `γ^0 = 1`.
    pub fn power(&self, exponent: f64) -> ScalarField {
        self.gamma.map(|g| {
            if exponent == 0.0 {
                1.0
            } else if g <= 0.0 {
                0.0
            } else {
                g.powf(exponent)
            }
        })
    }

    /// `η = γ^s`.
    pub fn eta(&self) -> ScalarField {
        self.power(self.s)
    }

    /// `∇η = s γ^{s−1} ∇γ`.
    pub fn grad_eta(&self) -> Vec<ScalarField> {
        let factor = self.power(self.s - 1.0).map(|v| self.s * v);
        self.gradient
            .iter()
            .map(|g| g.zip_with(&factor, |a, b| a * b).expect("same grid"))
            .collect()
    }

    /// Audit CSV `x,gamma,grad,hess` (1-D only: signed γ′ and γ″).
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,gamma,grad,hess")?;
        let grid = self.grid();
        for idx in 0..grid.len() {
            let [x, _] = grid.node(idx);
            let r = (x - self.center[0]).abs();
            let sign = if x >= self.center[0] { 1.0 } else { -1.0 };
            let (g, gr, grr) = if self.transition_profile == TRANSITION_PROFILE {
                radial(r, self.rho)
            } else {
                (1.0, 0.0, 0.0)
            };
            writeln!(out, "{x},{g},{},{grr}", sign * gr)?;
        }
        Ok(())
    }
}

/// `∫ f · w`.
pub fn weighted_integral(f: &ScalarField, weight: &ScalarField) -> Result<f64> {
    Ok(integrate(&f.zip_with(weight, |a, b| a * b)?))
}

/// `E^k_η(u) = ∫ |Δ^k u|² γ^s`.
pub fn weighted_energy(u: &ScalarField, k: usize, cutoff: &Cutoff) -> Result<f64> {
    weighted_energy_with(u, k, cutoff, cutoff.s)
}

/// `∫ |Δ^k u|² γ^e` for an explicit exponent `e`.
pub fn weighted_energy_with(u: &ScalarField, k: usize, cutoff: &Cutoff, exponent: f64) -> Result<f64> {
    let lk = iterated_laplacian(u, k).map(|v| v * v);
    weighted_integral(&lk, &cutoff.power(exponent))
}

/// A solution that can be evaluated pointwise together with its Laplacian.
pub trait PointwiseSolution: Sync {
    fn value(&self, x: f64, t: f64) -> Result<f64>;
    fn laplacian(&self, x: f64, t: f64) -> Result<f64>;
}

/// `u ≡ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroSolution;

impl PointwiseSolution for ZeroSolution {
    fn value(&self, _x: f64, _t: f64) -> Result<f64> {
        Ok(0.0)
    }

    fn laplacian(&self, _x: f64, _t: f64) -> Result<f64> {
        Ok(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::sample_field;
    use std::f64::consts::PI;

    #[test]
    fn distance_examples() {
        assert_eq!(dist_to_boundary(&[0.0]), 1.0);
        assert_eq!(dist_to_boundary(&[1.5]), 0.0);
        assert_eq!(dist_to_boundary(&[0.5]), 0.5);
    }

    #[test]
    fn monitors_of_simple_fields() {
        let g = Grid::new(1, PI, 64).unwrap();
        let z = ScalarField::zeros(g);
        for (kind, s) in [
            (MonitorKind::Q, None),
            (MonitorKind::E, None),
            (MonitorKind::B, None),
            (MonitorKind::Qs, Some(3)),
            (MonitorKind::Es, Some(2)),
            (MonitorKind::Bs, Some(4)),
        ] {
            assert_eq!(monitor(&z, kind, 1.0, s).unwrap().values.max_abs(), 0.0);
        }
        let u = sample_field(&g, |x| x[0].sin()).unwrap();
        let q = monitor(&u, MonitorKind::Q, 1.0, None).unwrap();
        for (idx, v) in q.values.values().iter().enumerate() {
            assert!((v - g.coordinate(idx).sin().powi(2)).abs() < 1e-10);
        }
        let e = monitor(&u, MonitorKind::E, 1.0, None).unwrap();
        for (idx, v) in e.values.values().iter().enumerate() {
            if g.coordinate(idx).abs() >= 1.0 {
                assert_eq!(*v, 0.0);
            }
        }
        assert!(monitor(&u, MonitorKind::B, 0.0, None).is_err());
        assert!(monitor(&u, MonitorKind::Qs, 1.0, Some(1)).is_err());
        assert!(monitor(&u, MonitorKind::Q, 1.0, Some(2)).is_err());
    }

    #[test]
    fn transition_profile_constants() {
        let (phi, d1, _) = transition(0.5);
        assert!((phi - 0.5).abs() < 1e-15);
        assert!((d1 - 2.0).abs() < 1e-13);
        let (_, _, d2) = transition(0.218_256);
        assert!((d2.abs() - 9.841_042_301_831_14).abs() < 1e-4);
    }

    #[test]
    fn cutoff_examples() {
        let g = Grid::new(1, 10.0, 512).unwrap();
        let c = make_cutoff(&g, &[0.0], 1.0, 9.0).unwrap();
        assert_eq!(c.gamma.values()[256], 1.0);
        let h = g.spacing();
        for (idx, v) in c.gamma.values().iter().enumerate() {
            let x = g.coordinate(idx).abs();
            assert!((0.0..=1.0).contains(v));
            if x >= 2.0 + h {
                assert_eq!(*v, 0.0);
            }
            if x <= 1.0 {
                assert_eq!(*v, 1.0);
            }
        }
        assert!(c.c_gamma >= 1.0);
        assert!(make_cutoff(&g, &[0.0], 3.0, 9.0).is_err());
    }

    #[test]
    fn energy_examples() {
        let g = Grid::new(1, PI, 64).unwrap();
        let unit = unit_cutoff(&g, 9.0);
        let u = sample_field(&g, |x| x[0].sin()).unwrap();
        assert!((weighted_energy(&u, 1, &unit).unwrap() - PI).abs() < 1e-10);
        assert_eq!(weighted_energy(&ScalarField::zeros(g), 2, &unit).unwrap(), 0.0);
    }
}
