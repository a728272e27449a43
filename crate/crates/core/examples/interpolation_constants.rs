//! Explicit constants of the interpolation and weighted-energy inequalities,
//! and one pass of each inequality on a random field.
//!
//! cargo run --example interpolation_constants

use biharmonic::harness::checks::{check_cy, check_interp1, check_interp2, CyVariant};
use biharmonic::harness::constants::assemble_constants;
use biharmonic::harness::suites::normalized_random;
use biharmonic::quantities::make_cutoff;
use biharmonic::spectral::Grid;

fn main() -> biharmonic::Result<()> {
    let grid = Grid::new(1, 16.0, 512)?;
    let cutoff = make_cutoff(&grid, &[0.0], 4.0, 13.0)?;
    let table = assemble_constants(1.0, 13.0, 1, cutoff.c_gamma, 0.1, 2)?;
    println!("{}", serde_json::to_string_pretty(&table).expect("table serialises"));

    let u = normalized_random(&grid, 3)?;
    for (k, s, d) in [(1, 9.0, 0.1), (2, 12.0, 1.0)] {
        let r = check_interp1(&u, k, s, d, &cutoff)?;
        println!("interp1 k={k} s={s} delta0={d}: lhs {:.4e} <= rhs {:.4e}", r.lhs, r.rhs);
    }
    let r = check_interp2(&u, 2, 12.0, 0.1, &cutoff)?;
    println!("interp2 k=2 s=12: lhs {:.4e} <= rhs {:.4e}", r.lhs, r.rhs);
    for r in check_cy(&u, &cutoff, 1, 13.0, CyVariant::Cy2, &[0.0, 0.1, 0.5])? {
        println!("cy2 t={}: lhs {:+.4e} <= rhs {:.4e}", r.params["t"], r.lhs, r.rhs);
    }
    Ok(())
}
