//! Command-line front end.
//!
//! Every command produces a [`Table`] written as CSV (with `#` metadata
//! lines) or JSON. Exit codes: 0 success, 1 invalid input, 2 failed
//! verification, 3 series did not converge.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use output::{read_json, read_json_file, write_json, Cell, Table, SCHEMA_VERSION};

use crate::error::Error;
use crate::fractional_ops::OrderTriple;
use crate::solver::{
    cauchy_solution, coefficient_sequence, derive_params, fundamental_solution, DegenerateProblem,
};
use crate::special_functions::{kilbas_saigo, KilbasSaigoParams, DEFAULT_N_MAX, DEFAULT_TOL};
use crate::verification::{
    default_ic_points, initial_condition_check, residual_coefficient_identity_with,
    residual_numeric, GridSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

/// Coefficients checked by `verify`.
pub const VERIFY_K: usize = 200;
pub const COEFFICIENT_THRESHOLD: f64 = 1e-12;
pub const RESIDUAL_THRESHOLD: f64 = 5e-3;
pub const INITIAL_CONDITION_THRESHOLD: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(
    name = "degenerate-hilfer",
    version,
    about = "Series solutions of degenerate bi-ordinal Hilfer equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the Kilbas–Saigo function E_{α,m,l}(z).
    EvalKs(EvalKsArgs),
    /// Sample a fundamental solution u_s.
    Fundamental(ProblemArgs),
    /// Sample the Cauchy-type solution for initial values φ.
    Solve(ProblemArgs),
    /// Run the coefficient, residual and initial-condition checks.
    Verify(ProblemArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EvalKsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub l: f64,
    /// Single argument (real part). Overrides the grid.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub z_im: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    pub z_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    pub z_max: f64,
    #[arg(long, default_value_t = 41)]
    pub z_points: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_im: Option<f64>,
    /// Branch index for `fundamental`.
    #[arg(long)]
    pub s: Option<u32>,
    /// Comma-separated real initial values φ_0,...,φ_{i−1}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phis: Option<Vec<f64>>,
    #[arg(long)]
    pub y_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// JSON file with any of the fields of `RunConfig`; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Multiply c_1 by (1 + 1e−6) before the coefficient check.
    #[arg(long, hide = true)]
    pub corrupt_c1: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Flat run configuration, as read from `--config` files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub i: Option<u32>,
    pub m: Option<f64>,
    pub lambda_re: Option<f64>,
    pub lambda_im: Option<f64>,
    pub s: Option<u32>,
    pub phis: Option<Vec<f64>>,
    pub y_max: Option<f64>,
    pub points: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// Configuration with defaults filled in: the Caputo half-order problem
/// `α = β = 1/2, μ = 1, i = 1, m = 0, λ = 1` on 512 points of `(0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub problem: DegenerateProblem,
    pub s: u32,
    pub phis: Vec<Complex64>,
    pub y_max: f64,
    pub points: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn overlay(self, args: &ProblemArgs) -> RunConfig {
        RunConfig {
            alpha: args.alpha.or(self.alpha),
            beta: args.beta.or(self.beta),
            mu: args.mu.or(self.mu),
            i: args.i.or(self.i),
            m: args.m.or(self.m),
            lambda_re: args.lambda_re.or(self.lambda_re),
            lambda_im: args.lambda_im.or(self.lambda_im),
            s: args.s.or(self.s),
            phis: args.phis.clone().or(self.phis),
            y_max: args.y_max.or(self.y_max),
            points: args.points.or(self.points),
            tol: args.tol.or(self.tol),
            format: args.output.format.or(self.format),
            out: args.output.out.clone().or(self.out),
        }
    }

    pub fn resolve(&self) -> crate::Result<Resolved> {
        let alpha = self.alpha.unwrap_or(0.5);
        let i = self.i.unwrap_or_else(|| alpha.floor() as u32 + 1);
        let orders =
            OrderTriple::new(alpha, self.beta.unwrap_or(alpha), self.mu.unwrap_or(1.0), i)?;
        let lambda = Complex64::new(self.lambda_re.unwrap_or(1.0), self.lambda_im.unwrap_or(0.0));
        let problem = DegenerateProblem::new(orders, self.m.unwrap_or(0.0), lambda)?;
        let phis = self
            .phis
            .clone()
            .unwrap_or_else(|| vec![1.0; i as usize])
            .into_iter()
            .map(|p| Complex64::new(p, 0.0))
            .collect::<Vec<_>>();
        let y_max = self.y_max.unwrap_or(1.0);
        if !(y_max > 0.0) || !y_max.is_finite() {
            return Err(Error::Input(format!(
                "y_max > 0 violated (y_max = {y_max})"
            )));
        }
        let points = self.points.unwrap_or(512);
        if points == 0 {
            return Err(Error::Input("points ≥ 1 violated".into()));
        }
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(Error::Input(format!("tol > 0 violated (tol = {tol})")));
        }
        Ok(Resolved {
            problem,
            s: self.s.unwrap_or(0),
            phis,
            y_max,
            points,
            tol,
            format: self.format.unwrap_or(Format::Csv),
            out: self.out.clone(),
        })
    }
}

/// Command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: format!("i/o error: {e}"),
        }
    }
}

/// Result of a command: the table and the exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub code: i32,
    pub message: Option<String>,
}

fn resolve(args: &ProblemArgs) -> Result<Resolved, Failure> {
    let base = match &args.config {
        Some(path) => read_json_file::<RunConfig>(path).map_err(|e| Failure {
            code: EXIT_INVALID,
            message: format!("config {}: {e}", path.display()),
        })?,
        None => RunConfig::default(),
    };
    Ok(base.overlay(args).resolve()?)
}

/// `y_k = k · y_max / points`, `k = 1..=points`.
fn sample_grid(r: &Resolved) -> impl Iterator<Item = f64> + '_ {
    (1..=r.points).map(move |k| k as f64 * r.y_max / r.points as f64)
}

fn problem_meta(t: &mut Table, p: &DegenerateProblem) {
    let o = &p.orders;
    t.meta("alpha", o.alpha);
    t.meta("beta", o.beta);
    t.meta("mu", o.mu);
    t.meta("i", o.i);
    t.meta("m", p.m);
    t.meta("lambda_re", p.lambda.re);
    t.meta("lambda_im", p.lambda.im);
}

pub fn cmd_eval_ks(args: &EvalKsArgs) -> Result<Outcome, Failure> {
    let params = KilbasSaigoParams::new(args.alpha, args.m, args.l)?;
    let zs: Vec<Complex64> = match args.z {
        Some(z) => vec![Complex64::new(z, args.z_im)],
        None => {
            if args.z_points < 2 {
                return Err(Error::Input("z_points ≥ 2 violated".into()).into());
            }
            let step = (args.z_max - args.z_min) / (args.z_points - 1) as f64;
            (0..args.z_points)
                .map(|k| Complex64::new(args.z_min + k as f64 * step, args.z_im))
                .collect()
        }
    };
    let mut t = Table::new(
        "eval-ks",
        &[
            "z_re",
            "z_im",
            "value_re",
            "value_im",
            "terms_used",
            "converged",
        ],
    );
    t.meta("alpha", args.alpha);
    t.meta("m", args.m);
    t.meta("l", args.l);
    t.meta("tol", args.tol);
    let mut all = true;
    for z in zs {
        let r = kilbas_saigo(params, z, args.tol, DEFAULT_N_MAX)?;
        all &= r.converged;
        t.push(vec![
            Cell::num(z.re),
            Cell::num(z.im),
            Cell::num(r.value.re),
            Cell::num(r.value.im),
            Cell::Int(r.terms_used as u64),
            Cell::Bool(r.converged),
        ]);
    }
    Ok(converge_outcome(t, all))
}

fn converge_outcome(table: Table, converged: bool) -> Outcome {
    if converged {
        Outcome {
            table,
            code: EXIT_OK,
            message: None,
        }
    } else {
        Outcome {
            table,
            code: EXIT_NOT_CONVERGED,
            message: Some(
                "series did not converge within the term budget at one or more points".into(),
            ),
        }
    }
}

pub fn cmd_fundamental(args: &ProblemArgs) -> Result<Outcome, Failure> {
    let r = resolve(args)?;
    let u = fundamental_solution(&r.problem, r.s, crate::solver::DEFAULT_TRUNCATION)?;
    let d = derive_params(&r.problem)?;
    let ks = u.ks_params();
    let mut t = Table::new(
        "fundamental",
        &["y", "u_re", "u_im", "terms_used", "converged"],
    );
    problem_meta(&mut t, &r.problem);
    t.meta("s", r.s);
    t.meta("gamma", d.gamma);
    t.meta("a", d.a);
    t.meta("b_s", u.b);
    t.meta("ks_alpha", ks.alpha);
    t.meta("ks_m", ks.m);
    t.meta("ks_l", ks.l);
    let mut all = true;
    for y in sample_grid(&r) {
        let v = u.evaluate(y, r.tol)?;
        all &= v.converged;
        t.push(vec![
            Cell::num(y),
            Cell::num(v.value.re),
            Cell::num(v.value.im),
            Cell::Int(v.terms_used as u64),
            Cell::Bool(v.converged),
        ]);
    }
    Ok(converge_outcome(t, all))
}

pub fn cmd_solve(args: &ProblemArgs) -> Result<Outcome, Failure> {
    let r = resolve(args)?;
    let sol = cauchy_solution(&r.problem, &r.phis)?;
    let mut t = Table::new("solve", &["y", "u_re", "u_im", "terms_used", "converged"]);
    problem_meta(&mut t, &r.problem);
    t.meta(
        "phis",
        r.phis
            .iter()
            .map(|p| p.re.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    let mut all = true;
    for y in sample_grid(&r) {
        let v = sol.evaluate(y, r.tol)?;
        all &= v.converged;
        t.push(vec![
            Cell::num(y),
            Cell::num(v.value.re),
            Cell::num(v.value.im),
            Cell::Int(v.terms_used as u64),
            Cell::Bool(v.converged),
        ]);
    }
    Ok(converge_outcome(t, all))
}

pub fn cmd_verify(args: &ProblemArgs) -> Result<Outcome, Failure> {
    let r = resolve(args)?;
    let p = &r.problem;
    let mut t = Table::new(
        "verify",
        &["check", "index", "value", "threshold", "status"],
    );
    problem_meta(&mut t, p);
    let mut failures = Vec::new();
    let mut record = |t: &mut Table, check: &str, index: u32, value: f64, threshold: f64| {
        let ok = value <= threshold;
        if !ok {
            failures.push(format!(
                "{check}[{index}] = {value:e} exceeds {threshold:e}"
            ));
        }
        t.push(vec![
            Cell::text(check),
            Cell::Int(u64::from(index)),
            Cell::num(value),
            Cell::num(threshold),
            Cell::text(if ok { "pass" } else { "fail" }),
        ]);
    };

    for s in 0..p.orders.i {
        let mut coeffs = coefficient_sequence(p, s, VERIFY_K)?;
        if args.corrupt_c1 {
            coeffs[1] = coeffs[1] * (1.0 + 1e-6);
        }
        let err = residual_coefficient_identity_with(p, s, &coeffs)?;
        record(
            &mut t,
            "coefficient_identity",
            s,
            err,
            COEFFICIENT_THRESHOLD,
        );
    }

    if p.orders.i <= 2 {
        let grid = GridSpec::new(r.y_max, r.points + 1)?;
        for s in 0..p.orders.i {
            let rep = residual_numeric(p, s, grid, r.tol)?;
            record(
                &mut t,
                "equation_residual",
                s,
                rep.max_rel_error,
                RESIDUAL_THRESHOLD,
            );
        }
        let ic = initial_condition_check(p, &r.phis, &default_ic_points())?;
        for e in ic {
            record(
                &mut t,
                "initial_condition",
                e.j,
                e.error,
                INITIAL_CONDITION_THRESHOLD,
            );
        }
    } else {
        for check in ["equation_residual", "initial_condition"] {
            t.push(vec![
                Cell::text(check),
                Cell::Int(0),
                Cell::text("NaN"),
                Cell::text("NaN"),
                Cell::text("skipped"),
            ]);
        }
    }

    t.meta("passed", failures.is_empty());
    if failures.is_empty() {
        Ok(Outcome {
            table: t,
            code: EXIT_OK,
            message: None,
        })
    } else {
        Ok(Outcome {
            table: t,
            code: EXIT_VERIFY_FAILED,
            message: Some(format!("verification failed: {}", failures.join("; "))),
        })
    }
}

fn output_target(cmd: &Command) -> (Format, Option<PathBuf>, Option<&ProblemArgs>) {
    match cmd {
        Command::EvalKs(a) => (
            a.output.format.unwrap_or(Format::Csv),
            a.output.out.clone(),
            None,
        ),
        Command::Fundamental(a) | Command::Solve(a) | Command::Verify(a) => (
            a.output.format.unwrap_or(Format::Csv),
            a.output.out.clone(),
            Some(a),
        ),
    }
}

fn emit(
    table: &Table,
    format: Format,
    out: Option<&PathBuf>,
    stdout: &mut dyn Write,
) -> std::io::Result<()> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => table.write_csv(&mut buf)?,
        Format::Json => table.write_json(&mut buf)?,
    }
    match out {
        Some(path) => std::fs::write(path, buf),
        None => stdout.write_all(&buf),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::EvalKs(a) => cmd_eval_ks(a),
        Command::Fundamental(a) => cmd_fundamental(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let (mut format, mut out, problem) = output_target(&cli.command);
    if let Some(a) = problem {
        // Config-file values apply where flags are absent.
        if let Ok(r) = resolve(a) {
            format = r.format;
            out = r.out;
        }
    }
    if let Err(e) = emit(&outcome.table, format, out.as_ref(), stdout) {
        let _ = writeln!(stderr, "error: i/o error: {e}");
        return EXIT_INVALID;
    }
    if let Some(msg) = &outcome.message {
        let _ = writeln!(stderr, "error: {msg}");
    }
    outcome.code
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
