//! The `biharm` command line: argument and config-file parsing, dispatch,
//! and artifact emission with a manifest.
//!
//! Precedence: built-in defaults < `BIHARM_OUT` < config file < flags.

pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::{reports_to_json, run_suite, write_reports_csv, CheckReport, Suite, REPORT_SCHEMA};
use crate::kernel::{kernel_mass, profile, KernelProfile, TABLE_NODES, W_CUTOFF, Y_MAX};
use crate::spectral::{
    band_limited_random, integrate, iterated_laplacian, run_trajectory, sample_field, Grid, ScalarField,
};
use crate::stepexample::{analysis, nonintegrable_speed_report};
use crate::tychonoff::{eval_u, hypothesis_violation_scan, TychonoffParams};
use svg::{line_plot, Axes, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const MANIFEST_SCHEMA: &str = "biharm-manifest/1";
pub const FIELD_SCHEMA: &str = "biharm-field/1";
pub const TABLE_SCHEMA: &str = "biharm-table/1";

#[derive(Debug, Parser, Serialize)]
#[command(name = "biharm", version, about = "Numerical laboratory for the biharmonic heat flow")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Output directory.
    #[arg(long, global = true, env = "BIHARM_OUT", default_value = "biharm-out")]
    #[serde(skip)]
    pub out: PathBuf,
    /// Seed for randomized suites and fields.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Worker threads; 1 gives bit-reproducible runs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub emit_csv: bool,
    #[arg(long, global = true)]
    pub emit_json: bool,
    #[arg(long, global = true)]
    pub emit_svg: bool,
    /// Flat `key=value` file; keys are long flag names, `#` starts a comment.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Kernel profile tabulation and mass.
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Exact spectral evolution of a field.
    Evolve(EvolveArgs),
    /// The non-unique series solution.
    #[command(subcommand)]
    Tychonoff(TychonoffCommand),
    /// Constants of the step-data solution.
    #[command(subcommand)]
    Step(StepCommand),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelCommand {
    /// Tabulate `f, f′, …, f⁗`.
    Table(TableArgs),
    /// `∫ b(x, t) dx` for a list of times.
    Mass(MassArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long, default_value_t = Y_MAX)]
    pub y_max: f64,
    #[arg(long, default_value_t = TABLE_NODES)]
    pub nodes: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct MassArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.25,1,4")]
    pub t: Vec<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitKind {
    Sin,
    Bump,
    Random,
}

#[derive(Debug, Args, Serialize)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Half-width of the box `[−L, L)`.
    #[serde(rename = "L")]
    #[arg(long = "L", default_value_t = 10.0)]
    pub half_width: f64,
    /// Points per axis.
    #[serde(rename = "N")]
    #[arg(long = "N", default_value_t = 512)]
    pub points: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,1")]
    pub times: Vec<f64>,
    #[arg(long, value_enum, default_value_t = InitKind::Bump)]
    pub init: InitKind,
    /// Band limit for `--init random` (default `N/8`).
    #[arg(long)]
    pub max_mode: Option<usize>,
    /// Initial field as CSV; overrides `--init` and the grid flags.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub sigma: i32,
    /// Truncation index.
    #[serde(rename = "J")]
    #[arg(long = "J", default_value_t = 40)]
    pub terms: usize,
    /// Contour nodes.
    #[serde(rename = "M")]
    #[arg(long = "M", default_value_t = 1024)]
    pub nodes: usize,
}

impl SeriesArgs {
    fn params(&self) -> Result<TychonoffParams> {
        TychonoffParams::new(self.k, self.p, self.sigma, self.terms, self.nodes)
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TychonoffCommand {
    /// `u(x, t)` with its certified tail bound.
    Eval(TychonoffEvalArgs),
    /// `t |∂x²u|²` along increasing `x`.
    Scan(TychonoffScanArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TychonoffEvalArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.5,1,1.5")]
    pub x: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1")]
    pub t: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct TychonoffScanArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.5,1,1.5,2,2.5,3")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepCommand {
    /// Blow-up constant, speed constant and overshoot.
    Analyze(StepAnalyzeArgs),
    /// `max_x |Δ²u(x, t)|` for a list of times.
    Speed(SpeedArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct StepAnalyzeArgs {
    /// Half-width of the dumped profile window in `ξ`.
    #[arg(long, default_value_t = 10.0)]
    pub window: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SpeedArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.1,1,10")]
    pub t: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parameter { .. } | Error::GridMismatch | Error::Format(_) => EXIT_USAGE,
        Error::Io { .. } => EXIT_IO,
        Error::Sampling { .. } | Error::Quadrature { .. } => EXIT_CHECK_FAILED,
    }
}

/// Turns config-file text into flag tokens.
pub fn config_tokens(text: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Format(format!("config line {}: expected key=value, got `{line}`", n + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.starts_with('-') {
            return Err(Error::Format(format!("config line {}: bad key `{key}`", n + 1)));
        }
        match value {
            "true" => tokens.push(format!("--{key}")),
            "false" => {}
            _ => tokens.push(format!("--{key}={value}")),
        }
    }
    Ok(tokens)
}

const VALUE_FLAGS: [&str; 4] = ["--out", "--seed", "--threads", "--config"];

/// Moves the subcommand path to the front, then the config tokens, then the
/// remaining user tokens, so that user flags override file values.
fn splice_config(args: &[OsString], path_len: usize, config: Vec<String>) -> Vec<OsString> {
    let mut path = Vec::new();
    let mut rest = Vec::new();
    let mut skip_value = false;
    for a in &args[1..] {
        let s = a.to_string_lossy();
        if skip_value {
            skip_value = false;
            rest.push(a.clone());
        } else if path.len() < path_len && !s.starts_with('-') {
            path.push(a.clone());
        } else {
            skip_value = path.len() < path_len && VALUE_FLAGS.contains(&s.as_ref());
            rest.push(a.clone());
        }
    }
    let mut out = vec![args[0].clone()];
    out.extend(path);
    out.extend(config.into_iter().map(OsString::from));
    out.extend(rest);
    out
}

fn command_depth(cmd: &Command) -> usize {
    match cmd {
        Command::Evolve(_) | Command::Verify(_) => 1,
        _ => 2,
    }
}

/// Parses argv and the optional config file named by `--config`.
pub fn parse_config<I, T>(args: I) -> std::result::Result<Cli, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let first = Cli::try_parse_from(&args).map_err(clap_failure)?;
    let Some(path) = first.global.config.clone() else {
        return Ok(first);
    };
    let text = fs::read_to_string(&path).map_err(|e| {
        let err = Error::io(&path, e);
        (EXIT_IO, err.to_string())
    })?;
    let tokens = config_tokens(&text).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    let spliced = splice_config(&args, command_depth(&first.command), tokens);
    Cli::try_parse_from(&spliced).map_err(clap_failure)
}

fn clap_failure(e: clap::Error) -> (i32, String) {
    let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
    (code, e.render().to_string())
}

#[derive(Serialize)]
struct ManifestEntry {
    path: String,
    schema: &'static str,
}

/// Collects written files for the manifest.
struct Output {
    dir: PathBuf,
    csv: bool,
    json: bool,
    svg: bool,
    files: Vec<ManifestEntry>,
}

impl Output {
    fn new(global: &GlobalArgs) -> Self {
        let any = global.emit_csv || global.emit_json || global.emit_svg;
        Self {
            dir: global.out.clone(),
            csv: global.emit_csv || !any,
            json: global.emit_json || !any,
            svg: global.emit_svg,
            files: Vec::new(),
        }
    }

    fn write(&mut self, name: &str, schema: &'static str, body: &[u8]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        self.files.push(ManifestEntry {
            path: name.to_string(),
            schema,
        });
        Ok(())
    }

    fn csv(&mut self, name: &str, schema: &'static str, fill: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<()> {
        if !self.csv {
            return Ok(());
        }
        let mut buf = format!("# schema={schema}\n").into_bytes();
        fill(&mut buf).map_err(|e| Error::io(self.dir.join(name), e))?;
        self.write(name, schema, &buf)
    }

    fn json(&mut self, name: &str, schema: &'static str, value: &Value) -> Result<()> {
        if !self.json {
            return Ok(());
        }
        let mut doc = value.clone();
        if let Value::Object(map) = &mut doc {
            map.insert("schema".into(), Value::from(schema));
        }
        let mut text = serde_json::to_string_pretty(&doc).expect("json values serialise");
        text.push('\n');
        self.write(name, schema, text.as_bytes())
    }

    fn svg(&mut self, name: &str, body: impl FnOnce() -> String) -> Result<()> {
        if !self.svg {
            return Ok(());
        }
        self.write(name, "svg", body().as_bytes())
    }

    fn finish(mut self, cli: &Cli) -> Result<()> {
        let files = std::mem::take(&mut self.files);
        let manifest = json!({
            "schema": MANIFEST_SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "params": serde_json::to_value(cli).expect("config serialises"),
            "files": files,
        });
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
        text.push('\n');
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let path = self.dir.join("manifest.json");
        fs::write(&path, text).map_err(|e| Error::io(&path, e))
    }
}

/// Parses and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_config(args) {
        Ok(cli) => run(&cli),
        Err((code, message)) => {
            if code == EXIT_OK {
                print!("{message}");
            } else {
                eprint!("{message}");
            }
            code
        }
    }
}

/// Runs a parsed configuration.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match cli.global.threads {
        Some(0) => Err(Error::param("threads", "must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Error::param("threads", e.to_string())),
        },
        None => dispatch(cli),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Returns whether every check (if any) passed.
fn dispatch(cli: &Cli) -> Result<bool> {
    let mut out = Output::new(&cli.global);
    let ok = match &cli.command {
        Command::Kernel(KernelCommand::Table(a)) => kernel_table(a, &mut out)?,
        Command::Kernel(KernelCommand::Mass(a)) => kernel_mass_cmd(a, &mut out)?,
        Command::Evolve(a) => evolve_cmd(a, cli.global.seed, &mut out)?,
        Command::Tychonoff(TychonoffCommand::Eval(a)) => tychonoff_eval(a, &mut out)?,
        Command::Tychonoff(TychonoffCommand::Scan(a)) => tychonoff_scan(a, &mut out)?,
        Command::Step(StepCommand::Analyze(a)) => step_analyze(a, &mut out)?,
        Command::Step(StepCommand::Speed(a)) => step_speed(a, &mut out)?,
        Command::Verify(a) => verify(a, cli.global.seed, &mut out)?,
    };
    out.finish(cli)?;
    Ok(ok)
}

fn kernel_table(a: &TableArgs, out: &mut Output) -> Result<bool> {
    let owned;
    let prof: &KernelProfile = if a.y_max == Y_MAX && a.nodes == TABLE_NODES {
        profile()
    } else {
        owned = KernelProfile::with_range(a.y_max, a.nodes)?;
        &owned
    };
    out.csv("kernel_table.csv", TABLE_SCHEMA, |b| prof.write_table(b))?;
    if out.csv {
        let mut buf = Vec::new();
        prof.write_cache(&mut buf).map_err(|e| Error::io("kernel_profile.cache", e))?;
        out.write("kernel_profile.cache", "biharm-kernel-profile/1", &buf)?;
    }
    let decay: Vec<Value> = (0..=8)
        .map(|m| {
            let r = prof.decay_report(m)?;
            Ok(json!({"m": r.m, "sup_f": r.sup_f, "sup_df": r.sup_df, "window_sups": r.window_sups}))
        })
        .collect::<Result<_>>()?;
    out.json(
        "kernel_table.json",
        TABLE_SCHEMA,
        &json!({
            "W": W_CUTOFF,
            "y_max": prof.y_max(),
            "nodes": prof.node_count(),
            "f0": prof.f(0.0),
            "tabulated_mass": prof.tabulated_mass(),
            "decay": decay,
        }),
    )?;
    out.svg("kernel_profile.svg", || {
        let pts = |order: usize| -> Vec<(f64, f64)> {
            (0..prof.node_count())
                .step_by(4)
                .map(|i| (prof.node(i), prof.samples(order)[i]))
                .collect()
        };
        line_plot(
            "kernel profile",
            "y",
            "value",
            &[Series { label: "f".into(), points: pts(0) }, Series { label: "f'".into(), points: pts(1) }],
            Axes::default(),
        )
    })?;
    println!("f(0) = {:.15}", prof.f(0.0));
    println!("tabulated mass = {:.15}", prof.tabulated_mass());
    Ok(true)
}

fn kernel_mass_cmd(a: &MassArgs, out: &mut Output) -> Result<bool> {
    let reports: Vec<CheckReport> = a
        .t
        .iter()
        .map(|&t| {
            let m = kernel_mass(t)?;
            Ok(CheckReport::identity("kernel_mass", m, 1.0, 1e-8).param("t", t))
        })
        .collect::<Result<_>>()?;
    out.csv("kernel_mass.csv", TABLE_SCHEMA, |b| {
        writeln!(b, "t,mass,error")?;
        for r in &reports {
            writeln!(b, "{},{},{:e}", r.params["t"], r.lhs, r.lhs - 1.0)?;
        }
        Ok(())
    })?;
    out.json("kernel_mass.json", REPORT_SCHEMA, &serde_json::from_str(&reports_to_json("kernel_mass", &reports)).expect("valid json"))?;
    for r in &reports {
        println!("t = {}  mass = {:.15}  {}", r.params["t"], r.lhs, if r.pass { "ok" } else { "FAIL" });
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn evolve_cmd(a: &EvolveArgs, seed: u64, out: &mut Output) -> Result<bool> {
    let u0 = match &a.input {
        Some(path) => {
            let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
            ScalarField::read_csv(std::io::BufReader::new(file))?
        }
        None => {
            let grid = Grid::new(a.dim, a.half_width, a.points)?;
            match a.init {
                InitKind::Sin => sample_field(&grid, |x| x.iter().map(|c| (std::f64::consts::PI * c / a.half_width).sin()).product())?,
                InitKind::Bump => {
                    let r = a.half_width / 4.0;
                    sample_field(&grid, |x| crate::harness::checks::bump(x.iter().map(|c| c * c).sum::<f64>().sqrt(), r))?
                }
                InitKind::Random => band_limited_random(&grid, a.max_mode.unwrap_or(a.points / 8), seed)?,
            }
        }
    };
    let traj = run_trajectory(&u0, &a.times)?;
    let mut summary = Vec::new();
    for (i, (t, u)) in traj.iter().enumerate() {
        out.csv(&format!("evolve_{i:03}.csv"), FIELD_SCHEMA, |b| {
            writeln!(b, "# t={t}")?;
            u.write_csv(b)
        })?;
        let l2 = integrate(&u.map(|v| v * v));
        let lap = iterated_laplacian(u, 1);
        let h2 = integrate(&lap.map(|v| v * v));
        println!("t = {t:<8} max|u| = {:.6e}  ∫u² = {:.6e}  ∫(Δu)² = {:.6e}", u.max_abs(), l2, h2);
        summary.push(json!({"t": t, "max_abs": u.max_abs(), "l2": l2, "laplacian_l2": h2}));
    }
    let grid = *u0.grid();
    out.json(
        "evolve.json",
        FIELD_SCHEMA,
        &json!({
            "dim": grid.dim(),
            "L": grid.half_width(),
            "N": grid.points_per_axis(),
            "snapshots": summary,
        }),
    )?;
    if grid.dim() == 1 {
        out.svg("evolve.svg", || {
            let series: Vec<Series> = traj
                .iter()
                .map(|(t, u)| Series {
                    label: format!("t = {t}"),
                    points: u.values().iter().enumerate().map(|(j, &v)| (grid.coordinate(j), v)).collect(),
                })
                .collect();
            line_plot("spectral evolution", "x", "u", &series, Axes::default())
        })?;
    }
    Ok(true)
}

fn tychonoff_eval(a: &TychonoffEvalArgs, out: &mut Output) -> Result<bool> {
    let params = a.series.params()?;
    let mut rows = Vec::new();
    for &t in &a.t {
        for &x in &a.x {
            rows.push((x, t, eval_u(x, t, &params)?));
        }
    }
    out.csv("tychonoff_eval.csv", TABLE_SCHEMA, |b| {
        writeln!(b, "x,t,value,tail_bound")?;
        for (x, t, v) in &rows {
            writeln!(b, "{x},{t},{:e},{:e}", v.value, v.tail_bound)?;
        }
        Ok(())
    })?;
    let items: Vec<Value> = rows
        .iter()
        .map(|(x, t, v)| {
            json!({"x": x, "t": t, "value": v.value, "tail_bound": v.tail_bound,
                   "terms_used": v.terms_used, "truncation_warning": v.truncation_warning})
        })
        .collect();
    out.json("tychonoff_eval.json", TABLE_SCHEMA, &json!({"epsilon0": params.epsilon0(), "rows": items}))?;
    for (x, t, v) in &rows {
        let warn = if v.truncation_warning { "  (truncation warning)" } else { "" };
        println!("u({x}, {t}) = {:.15e}  tail ≤ {:.3e}{warn}", v.value, v.tail_bound);
    }
    Ok(true)
}

fn tychonoff_scan(a: &TychonoffScanArgs, out: &mut Output) -> Result<bool> {
    let params = a.series.params()?;
    let rows = hypothesis_violation_scan(a.t, &a.x, &params)?;
    out.csv("tychonoff_scan.csv", TABLE_SCHEMA, |b| {
        writeln!(b, "x,t,monitor,uxx,uxx_tail_bound")?;
        for r in &rows {
            writeln!(b, "{},{},{:e},{:e},{:e}", r.x, r.t, r.monitor, r.uxx.value, r.uxx.tail_bound)?;
        }
        Ok(())
    })?;
    let items: Vec<Value> = rows
        .iter()
        .map(|r| json!({"x": r.x, "t": r.t, "monitor": r.monitor, "uxx": r.uxx.value, "uxx_tail_bound": r.uxx.tail_bound}))
        .collect();
    out.json("tychonoff_scan.json", TABLE_SCHEMA, &json!({"rows": items}))?;
    out.svg("tychonoff_scan.svg", || {
        line_plot(
            "growth monitor t|u_xx|^2",
            "x",
            "monitor",
            &[Series {
                label: "t|u_xx|^2".into(),
                points: rows.iter().map(|r| (r.x, r.monitor)).collect(),
            }],
            Axes { log_y: true, ..Axes::default() },
        )
    })?;
    for r in &rows {
        println!("x = {:<6} t|u_xx|² = {:.10e}", r.x, r.monitor);
    }
    Ok(true)
}

fn step_analyze(a: &StepAnalyzeArgs, out: &mut Output) -> Result<bool> {
    if !(a.window.is_finite() && a.window > 0.0 && a.window <= Y_MAX) {
        return Err(Error::param("window", format!("must lie in (0, {Y_MAX}]")));
    }
    let s = analysis();
    let value = serde_json::to_value(s).expect("analysis serialises");
    out.json("step_analysis.json", TABLE_SCHEMA, &value)?;
    let prof = profile();
    let count = (2.0 * a.window / 0.01).round() as usize;
    let xs: Vec<f64> = (0..=count).map(|i| -a.window + i as f64 * 0.01).collect();
    out.csv("step_profile.csv", TABLE_SCHEMA, |b| {
        writeln!(b, "xi,F,f,f1,f3")?;
        for &x in &xs {
            writeln!(b, "{x},{},{},{},{}", prof.step_profile(x), prof.f(x), prof.derivative(x, 1), prof.derivative(x, 3))?;
        }
        Ok(())
    })?;
    out.svg("step_profile.svg", || {
        line_plot(
            "step profile",
            "xi",
            "F",
            &[Series {
                label: "F".into(),
                points: xs.iter().map(|&x| (x, prof.step_profile(x))).collect(),
            }],
            Axes::default(),
        )
    })?;
    println!("k0* = {:.17e}  (xi* = {:.17})", s.k0_star, s.xi_star);
    println!("k1* = {:.17e}  (y*  = {:.17})", s.k1_star, s.y_star);
    println!("overshoot = {:.17e} at xi = {:.17}", s.overshoot, s.overshoot_at);
    Ok(true)
}

fn step_speed(a: &SpeedArgs, out: &mut Output) -> Result<bool> {
    let rows = nonintegrable_speed_report(&a.t)?;
    out.csv("step_speed.csv", TABLE_SCHEMA, |b| {
        writeln!(b, "t,max_bilaplacian,scaled,y")?;
        for r in &rows {
            writeln!(b, "{},{:e},{:e},{}", r.t, r.max_bilaplacian, r.scaled, r.y)?;
        }
        Ok(())
    })?;
    out.json("step_speed.json", TABLE_SCHEMA, &json!({"rows": serde_json::to_value(&rows).expect("rows serialise")}))?;
    out.svg("step_speed.svg", || {
        line_plot(
            "max |Δ²u| against t",
            "t",
            "max |Δ²u|",
            &[Series {
                label: "max |Δ²u|".into(),
                points: rows.iter().map(|r| (r.t, r.max_bilaplacian)).collect(),
            }],
            Axes {
                log_x: true,
                log_y: true,
                scatter: false,
            },
        )
    })?;
    for r in &rows {
        println!("t = {:<8} max|Δ²u| = {:.12e}  t·max = {:.12e}", r.t, r.max_bilaplacian, r.scaled);
    }
    Ok(true)
}

fn verify(a: &VerifyArgs, seed: u64, out: &mut Output) -> Result<bool> {
    let reports = run_suite(a.suite, seed)?;
    let suite = a.suite.name();
    let json_text = reports_to_json(suite, &reports);
    if out.json {
        out.write(&format!("verify_{suite}.json"), REPORT_SCHEMA, json_text.as_bytes())?;
    }
    if out.csv {
        let mut buf = Vec::new();
        write_reports_csv(&reports, &mut buf).map_err(|e| Error::io(Path::new("verify.csv"), e))?;
        out.write(&format!("verify_{suite}.csv"), REPORT_SCHEMA, &buf)?;
    }
    out.svg(&format!("verify_{suite}.svg"), || {
        let pts = reports
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let scale = r.lhs.abs().max(r.rhs.abs()).max(f64::MIN_POSITIVE);
                (i as f64, (r.margin / scale).clamp(-1.0, 1.0))
            })
            .collect();
        line_plot(
            "relative margins",
            "report",
            "margin / max(|lhs|, |rhs|)",
            &[Series { label: suite.into(), points: pts }],
            Axes {
                scatter: true,
                ..Axes::default()
            },
        )
    })?;
    let mut names: Vec<&str> = Vec::new();
    for r in &reports {
        if !names.contains(&r.name.as_str()) {
            names.push(&r.name);
        }
    }
    for name in names {
        let group: Vec<&CheckReport> = reports.iter().filter(|r| r.name == name).collect();
        let failed = group.iter().filter(|r| !r.pass).count();
        println!("{name:<30} {:>5} checks  {failed:>4} failed", group.len());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("suite {suite}: {} passed, {failed} failed", reports.len() - failed);
    Ok(failed == 0)
}
