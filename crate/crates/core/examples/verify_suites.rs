//! Runs every verification suite and prints a summary line per suite, plus
//! the tightest margin seen in each.

use std::time::Instant;

use biharmonic::harness::{run_suite, Suite};

fn main() -> biharmonic::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for suite in Suite::EACH {
        let start = Instant::now();
        let reports = run_suite(suite, seed)?;
        let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
        let tightest = reports
            .iter()
            .min_by(|a, b| (a.margin + a.tolerance).total_cmp(&(b.margin + b.tolerance)))
            .expect("suites are non-empty");
        println!(
            "{:<11} {:>5} checks  {:>3} failed  {:>7.2}s  tightest: {} margin {:.3e} tol {:.3e}",
            suite.name(),
            reports.len(),
            failed.len(),
            start.elapsed().as_secs_f64(),
            tightest.name,
            tightest.margin,
            tightest.tolerance
        );
        for r in failed.iter().take(5) {
            println!("    FAIL {} lhs={:e} rhs={:e} params={:?}", r.name, r.lhs, r.rhs, r.params);
        }
    }
    Ok(())
}
