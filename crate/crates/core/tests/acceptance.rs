//! One line per acceptance criterion, each with its measured values and
//! runtime. Exits non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use biharmonic::harness::checks::cross_validate_bump;
use biharmonic::harness::suites::{self, case_seed, normalized_random, step_minimal_n, BLOWUP_TIMES};
use biharmonic::harness::{uniqueness_experiment, CheckReport, CyVariant};
use biharmonic::kernel::{kernel_b, kernel_mass};
use biharmonic::spectral::Grid;
use biharmonic::stepexample::{analysis, blowup_monitor, nonintegrable_speed_report};
use biharmonic::tychonoff::{
    derivative_bound_ln, eval_derivative, eval_u, flat_trace_bound_ln, hypothesis_violation_scan, sup_abs, truncation_residual,
    FlatDerivatives, TychonoffParams,
};

const K0_STAR: f64 = 0.013_559_106_061_099_917;
const K1_STAR: f64 = -0.072_713_418_146_682_417;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, limit_s: f64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs_f64(limit_s);
    let pass = out.pass && in_time;
    println!(
        "criterion {id:>2}: {}  {}  [{:.2} s, limit {limit_s} s]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64()
    );
    pass
}

fn min_margin(reports: &[CheckReport]) -> f64 {
    reports.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
}

fn kernel_mass_one() -> Outcome {
    let err = (kernel_mass(1.0).unwrap() - 1.0).abs();
    Outcome {
        pass: err <= 1e-8,
        detail: format!("|mass - 1| = {err:.3e} (tol 1e-8)"),
    }
}

fn kernel_scaling() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let x = -6.0 + 12.0 * (i % 10) as f64 / 9.0;
        let t = 0.05 * 1.6f64.powi((i / 10) as i32);
        let b = kernel_b(x, t).unwrap();
        let err = (kernel_b(2.0 * x, 16.0 * t).unwrap() - b / 2.0).abs() / (1.0 + b.abs());
        worst = worst.max(err);
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("max |b(2x,16t) - b(x,t)/2|/(1+|b|) = {worst:.3e} over 100 points (tol 1e-10)"),
    }
}

fn solver_cross_validation() -> Outcome {
    let sup = cross_validate_bump(40.0, 4096, 0.5, 10.0).unwrap();
    Outcome {
        pass: sup <= 1e-6,
        detail: format!("interior sup |spectral - convolution| = {sup:.3e} at t = 0.5, L = 40, N = 4096 (tol 1e-6)"),
    }
}

fn energy_identity() -> Outcome {
    let reports = suites::lm1(7).unwrap();
    let (conv, ident): (Vec<_>, Vec<_>) = reports.iter().partition(|r| r.name == "lm1/convergence");
    let worst = ident
        .iter()
        .map(|r| r.params["relative_residual"].as_f64().unwrap())
        .fold(0.0f64, f64::max);
    let ratio = conv
        .iter()
        .map(|r| r.params["coarse_residual"].as_f64().unwrap() / r.params["fine_residual"].as_f64().unwrap())
        .fold(f64::INFINITY, f64::min);
    Outcome {
        pass: ident.len() == 150 && ident.iter().all(|r| r.pass) && conv.iter().all(|r| r.pass),
        detail: format!(
            "{} identities, worst relative residual {worst:.3e} (tol 1e-8); smallest doubling ratio {ratio:.3e} (need >= 4)",
            ident.len()
        ),
    }
}

fn interpolation_a2() -> Outcome {
    let reports = suites::interp1(7).unwrap();
    let refined = reports.iter().filter(|r| r.params.contains_key("refined")).count();
    let m = min_margin(&reports);
    Outcome {
        pass: reports.len() == 1600 && reports.iter().all(|r| r.pass && r.margin >= 0.0),
        detail: format!("{} cases, min margin {m:.3e}, refined {refined}", reports.len()),
    }
}

fn differential_inequality() -> Outcome {
    let reports = suites::cy(7, CyVariant::Cy2).unwrap();
    let m = min_margin(&reports);
    Outcome {
        pass: reports.len() == 60 && reports.iter().all(|r| r.pass && r.margin >= 0.0),
        detail: format!("{} checks (20 trajectories x 3 times), min margin {m:.3e}", reports.len()),
    }
}

fn flat_trace() -> Outcome {
    let params = TychonoffParams::default();
    let mut pass = (params.epsilon0() - 0.5).abs() < 1e-15;
    let mut parts = Vec::new();
    for t in [0.05, 0.1, 0.2] {
        let sup = sup_abs(1.0, t, 200, &params).unwrap();
        let bound = flat_trace_bound_ln(1.0, t, &params).exp();
        pass &= sup <= bound;
        parts.push(format!("t={t}: {sup:.2e} <= {bound:.2e}"));
    }
    let v = eval_u(1.5, 1.0, &params).unwrap();
    pass &= v.tail_bound > 0.0 && v.value.abs() > 10.0 * v.tail_bound;
    Outcome {
        pass,
        detail: format!("{}; u(1.5,1) = {:.6e}, tail {:.2e}", parts.join(", "), v.value, v.tail_bound),
    }
}

fn residual_identity() -> Outcome {
    let params = TychonoffParams::default();
    // J = 2 keeps the residual above 1e-4 |u_t|, so the difference of the two
    // partial sums is not dominated by cancellation
    let mut worst: f64 = 0.0;
    let mut smallest_ratio = f64::INFINITY;
    let mut probes = 0;
    for x in [1.3, 1.6, 2.0, 2.5] {
        for t in [0.3, 0.5, 0.7, 1.0, 1.5] {
            let r = truncation_residual(x, t, 2, &params).unwrap();
            let ut = eval_derivative(x, t, (1, 0), &params).unwrap().value;
            worst = worst.max(r.relative_error);
            smallest_ratio = smallest_ratio.min(r.closed_form.abs() / ut.abs());
            probes += 1;
        }
    }
    let mut bound_margin = f64::INFINITY;
    for t in [0.1, 0.5, 1.0] {
        let flat = FlatDerivatives::compute(t, params.p, params.nodes, 81).unwrap();
        for j in 0..=81 {
            bound_margin = bound_margin.min(derivative_bound_ln(j, t, &params) - flat.log_derivative(j).ln_abs);
        }
    }
    Outcome {
        pass: probes == 20 && worst <= 1e-8 && bound_margin >= 0.0,
        detail: format!(
            "worst relative residual {worst:.3e} at {probes} probes (tol 1e-8, min |residual/u_t| {smallest_ratio:.1e}); min ln-margin of derivative bound {bound_margin:.3}"
        ),
    }
}

fn blowup_rate() -> Outcome {
    let values: Vec<f64> = BLOWUP_TIMES.iter().map(|&s| blowup_monitor(s).unwrap()).collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    let cv = var.sqrt() / mean;
    let rows = nonintegrable_speed_report(&BLOWUP_TIMES).unwrap();
    let products: Vec<f64> = rows.iter().map(|r| r.t * r.max_bilaplacian).collect();
    let p0 = products[0];
    let spread = products.iter().map(|p| (p - p0).abs() / p0).fold(0.0f64, f64::max);
    let a = analysis();
    let k0_err = (a.k0_star - K0_STAR).abs() / K0_STAR;
    let k1_err = (a.k1_star - K1_STAR).abs() / K1_STAR.abs();
    let k1_match = (p0 - K1_STAR.abs()).abs() / K1_STAR.abs();
    Outcome {
        pass: cv <= 1e-6 && spread <= 1e-6 && k0_err <= 1e-9 && k1_err <= 1e-9 && k1_match <= 1e-6,
        detail: format!(
            "CV = {cv:.2e}, t*max|D4u| spread {spread:.2e} (value {p0:.12e}); k0* = {:.15e}, k1* = {:.15e}",
            a.k0_star, a.k1_star
        ),
    }
}

fn theorem1_n() -> Outcome {
    let ns = step_minimal_n().unwrap();
    let change = ns.windows(2).map(|w| (w[1] - w[0]).abs() / w[1]).fold(0.0f64, f64::max);
    Outcome {
        pass: ns.iter().all(|n| n.is_finite() && *n > 0.0) && change <= 0.05,
        detail: format!("minimal N at three resolutions {:?}, max relative change {change:.2e}", ns),
    }
}

fn uniqueness_exhibit() -> Outcome {
    let grid = Grid::new(1, 10.0, 512).unwrap();
    let mut det: f64 = 0.0;
    for i in 0..5 {
        let u = normalized_random(&grid, case_seed(7, i)).unwrap();
        let out = uniqueness_experiment(&u, &[0.0, 0.01, 0.1, 0.25, 0.5, 1.0]).unwrap();
        det = det.max(out.determinism.lhs);
    }
    let rows = hypothesis_violation_scan(0.5, &[2.0, 3.0], &TychonoffParams::default()).unwrap();
    let factor = rows[1].monitor / rows[0].monitor;
    Outcome {
        pass: det <= 1e-13 && factor >= 10.0,
        detail: format!("identical-data difference {det:.2e} (tol 1e-13); t|u_xx|^2 growth x=2 -> 3: {factor:.4}"),
    }
}

fn verify_once(dir: &Path) -> (i32, Vec<u8>) {
    let status = Command::new(env!("CARGO_BIN_EXE_biharm"))
        .args(["--out"])
        .arg(dir)
        .args(["verify", "--suite", "all", "--threads", "1", "--seed", "7"])
        .output()
        .expect("run biharm");
    let bytes = std::fs::read(dir.join("verify_all.json")).unwrap_or_default();
    (status.status.code().unwrap_or(-1), bytes)
}

fn reproducibility() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (ca, ja) = verify_once(a.path());
    let (cb, jb) = verify_once(b.path());
    Outcome {
        pass: ca == 0 && cb == 0 && !ja.is_empty() && ja == jb,
        detail: format!(
            "exit codes {ca}, {cb}; verify_all.json {} bytes, identical: {}",
            ja.len(),
            ja == jb
        ),
    }
}

fn main() {
    let results = [
        run(1, 1.0, kernel_mass_one),
        run(2, 1.0, kernel_scaling),
        run(3, 30.0, solver_cross_validation),
        run(4, 60.0, energy_identity),
        run(5, 120.0, interpolation_a2),
        run(6, 60.0, differential_inequality),
        run(7, 10.0, flat_trace),
        run(8, 30.0, residual_identity),
        run(9, 10.0, blowup_rate),
        run(10, 60.0, theorem1_n),
        run(11, 10.0, uniqueness_exhibit),
        run(12, 120.0, reproducibility),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, p)| !**p).map(|(i, _)| i + 1).collect();
    println!("acceptance: {} of 12 criteria passed", 12 - failed.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
