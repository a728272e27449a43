//! The localised energy identity with a genuine cutoff: the four integrals,
//! their residual, and how it falls when the grid is doubled.
//!
//! cargo run --example energy_identity

use biharmonic::harness::checks::identity_terms;
use biharmonic::harness::suites::normalized_random;
use biharmonic::quantities::make_cutoff;
use biharmonic::spectral::{refine_field, Grid};

fn main() -> biharmonic::Result<()> {
    let grid = Grid::new(1, 10.0, 512)?;
    let cutoff = make_cutoff(&grid, &[0.0], 2.5, 9.0)?;
    println!("rho = {}, s = {}, c_gamma = {:.6}", cutoff.rho, cutoff.s, cutoff.c_gamma);
    let u = normalized_random(&grid, 11)?;
    for k in 0..3 {
        let terms = identity_terms(&u, &cutoff, k)?;
        println!(
            "k = {k}: lhs {:+.12e}  rhs {:+.12e}  relative residual {:.2e}",
            terms.lhs,
            terms.rhs,
            terms.relative_residual()
        );
    }

    println!("\nresidual against resolution (k = 0)");
    let mut v = normalized_random(&Grid::new(1, 10.0, 128)?, 11)?;
    for _ in 0..4 {
        let c = make_cutoff(v.grid(), &[0.0], 2.5, 9.0)?;
        println!("  N = {:<5} {:.3e}", v.grid().points_per_axis(), identity_terms(&v, &c, 0)?.relative_residual());
        v = refine_field(&v);
    }
    Ok(())
}
