//! The kernel profile f, its mass, the scaling law b(2x, 16t) = b(x, t)/2,
//! decay of |y|^m f, and the step profile with its overshoot.
//!
//! cargo run --example kernel_profile

use biharmonic::kernel::{convolve_initial, kernel_b, kernel_mass, profile, step_profile_f, InitialData};

fn main() -> biharmonic::Result<()> {
    let prof = profile();
    println!("f(0) = {:.15}   (Gamma(5/4)/pi)", prof.f(0.0));
    println!("f(1) - f(-1) = {:.1e}", prof.f(1.0) - prof.f(-1.0));
    for t in [0.25, 1.0, 4.0] {
        println!("mass at t = {t:<4}: {:.15}", kernel_mass(t)?);
    }

    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let x = -3.0 + 0.06 * i as f64;
        let t = 0.2 + 0.03 * i as f64;
        let b = kernel_b(x, t)?;
        worst = worst.max((kernel_b(2.0 * x, 16.0 * t)? - b / 2.0).abs() / (1.0 + b.abs()));
    }
    println!("scaling defect over 100 samples: {worst:.2e}");

    println!("\n m   sup|y|^m|f|   sup|y|^m|f'|");
    for m in [0, 2, 4, 6, 8] {
        let row = prof.decay_report(m)?;
        println!("{m:>2}   {:.6e}   {:.6e}", row.sup_f, row.sup_df);
    }

    println!("\nF(0) = {}", step_profile_f(0.0));
    for xi in [-4.0, -2.0, 2.0, 3.45, 6.0, 30.0] {
        println!("F({xi:>5}) = {:.12}", step_profile_f(xi));
    }
    println!("step convolution at (0.7, 2): {:.12}", convolve_initial(&InitialData::Step, 0.7, 2.0)?);
    Ok(())
}
