//! The step-data solution: k0*, k1*, the constant monitor s|u_xx(x_s, s)|²,
//! the speed table and the empirical region constant N.
//!
//! cargo run --example step_blowup

use biharmonic::harness::suites::step_minimal_n;
use biharmonic::stepexample::{analysis, blowup_monitor, gap_envelope, nonintegrable_speed_report, step_u};

fn main() -> biharmonic::Result<()> {
    let a = analysis();
    println!("k0* = {:.16e} at xi* = {:.14}", a.k0_star, a.xi_star);
    println!("k1* = {:.16e} at y*  = {:.14}", a.k1_star, a.y_star);
    println!("overshoot max F - 1 = {:.12e} at xi = {:.10}", a.overshoot, a.overshoot_at);

    println!("\ns |u_xx(x_s, s)|^2");
    for s in [0.1, 0.3, 1.0, 3.0] {
        println!("  s = {s:<4} {:.15e}", blowup_monitor(s)?);
    }

    println!("\nt max|Δ²u|");
    for row in nonintegrable_speed_report(&[0.1, 1.0, 10.0])? {
        println!("  t = {:<5} {:.12e}  at x = {:.8}", row.t, row.scaled, row.y);
    }

    println!("\nu(0, t) = {} and u(3x, 81t) - u(x, t) = {:.1e}", step_u(0.0, 2.0)?, step_u(1.2, 81.0 * 0.3)? - step_u(0.4, 0.3)?);
    for t in [0.1, 0.05, 0.025] {
        println!("sup_(x' >= 8) |1 - u(x', {t})| = {:.3e}", gap_envelope(8.0, t)?);
    }

    let ns = step_minimal_n()?;
    println!("\nminimal N on three sampling levels: {:.8} {:.8} {:.8}", ns[0], ns[1], ns[2]);
    Ok(())
}
