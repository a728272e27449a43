//! Exact spectral evolution: eigenfunction decay, the semigroup property on a
//! random field, Plancherel, and the dissipation rate of ∫(Δ^k u)².
//!
//! cargo run --example spectral_flow

use biharmonic::spectral::{
    band_limited_random, evolve, integrate, iterated_laplacian, run_trajectory, sample_field, spectral_energy, Grid,
};

fn main() -> biharmonic::Result<()> {
    let grid = Grid::new(1, std::f64::consts::PI, 64)?;
    let u = sample_field(&grid, |x| x[0].sin())?;
    let traj = run_trajectory(&u, &[0.5, 1.0])?;
    for (t, v) in traj.iter() {
        println!("sin at t = {t}: max|u| = {:.15}  (exp(-t) = {:.15})", v.max_abs(), (-t).exp());
    }

    let grid = Grid::new(1, 10.0, 512)?;
    let u = band_limited_random(&grid, 64, 7)?;
    let a = evolve(&evolve(&u, 0.1)?, 0.2)?;
    let b = evolve(&u, 0.3)?;
    let diff = a.values().iter().zip(b.values()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    println!("\nsemigroup defect / max|u|: {:.2e}", diff / u.max_abs());

    let phys = integrate(&u.map(|v| v * v));
    println!("Plancherel: {phys:.15e} vs {:.15e}", spectral_energy(&u));

    // d/dt ∫(Δ^k u)² = −2∫(Δ^{k+1}u)², compared with a centred difference
    let energy = |t: f64, k: usize| -> biharmonic::Result<f64> {
        let v = iterated_laplacian(&evolve(&u, t)?, k);
        Ok(integrate(&v.map(|x| x * x)))
    };
    let (t, dt) = (0.05, 1e-5);
    for k in 0..3 {
        let fd = (energy(t + dt, k)? - energy(t - dt, k)?) / (2.0 * dt);
        let exact = -2.0 * energy(t, k + 1)?;
        println!("k = {k}: finite difference {fd:.10e}, exact {exact:.10e}, rel {:.1e}", (fd - exact).abs() / exact.abs());
    }
    Ok(())
}
