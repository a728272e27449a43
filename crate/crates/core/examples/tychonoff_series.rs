//! Tychonoff series: flat initial trace, non-triviality, the truncation
//! residual and the growth scan that (A1) rules out.
//!
//! cargo run --example tychonoff_series

use biharmonic::tychonoff::{
    derivative_bound_ln, eval_u, flat_trace_bound_ln, hypothesis_violation_scan, sup_abs,
    truncation_residual, FlatDerivatives, TychonoffParams,
};

fn main() -> biharmonic::Result<()> {
    let params = TychonoffParams::default();
    println!("k = {}, p = {}, sigma = {}, eps0 = {}", params.k, params.p, params.sigma, params.epsilon0());

    println!("\nflat trace on |x| <= 1");
    for t in [0.05, 0.1, 0.2] {
        let sup = sup_abs(1.0, t, 200, &params)?;
        println!("  t = {t:<5} sup|u| = {sup:.4e}  bound = {:.4e}", flat_trace_bound_ln(1.0, t, &params).exp());
    }

    let v = eval_u(1.5, 1.0, &params)?;
    println!("\nu(1.5, 1) = {:.15}  tail <= {:.3e}  (J = {})", v.value, v.tail_bound, v.terms_used);
    let v = eval_u(1.0, 1.0, &params)?;
    println!("u(1, 1)   = {:.15}  tail <= {:.3e}", v.value, v.tail_bound);

    let r = truncation_residual(1.2, 0.7, 3, &params)?;
    println!("\nresidual J=3 at (1.2, 0.7): direct {:.13e}, closed {:.13e}, rel {:.1e}", r.direct, r.closed_form, r.relative_error);

    println!("\nderivative bound margins (ln bound - ln|g0^(j)|), j <= 81");
    for t in [0.1, 0.5, 1.0] {
        let flat = FlatDerivatives::compute(t, params.p, params.nodes, 81)?;
        let worst = (0..=81)
            .map(|j| derivative_bound_ln(j, t, &params) - flat.log_derivative(j).ln_abs)
            .fold(f64::INFINITY, f64::min);
        println!("  t = {t:<4} min margin = {worst:.3}  (M = {})", flat.nodes_used());
    }

    println!("\nt |u_xx|^2 at t = 0.5");
    let rows = hypothesis_violation_scan(0.5, &[0.0, 1.0, 2.0, 3.0], &params)?;
    for row in &rows {
        println!("  x = {}  {:.12e}  (tail {:.1e})", row.x, row.monitor, row.uxx.tail_bound);
    }
    println!("  growth from x = 2 to x = 3: {:.6}", rows[3].monitor / rows[2].monitor);
    Ok(())
}
