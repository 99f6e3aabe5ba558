//! Checks that the series solutions satisfy the equation and the initial
//! conditions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Result};
use crate::fractional_ops::{
    falling_product, hilfer_monomial, hilfer_numeric_split, PowerTerm, SampledFunction,
};
use crate::solver::{
    cauchy_solution, coefficient_sequence, derive_params, fundamental_solution, CauchySolution,
    DegenerateProblem, SeriesSolution, DEFAULT_TRUNCATION,
};
use crate::special_functions::{sum_series, ScaledReal, DEFAULT_N_MAX};

/// Grid points at each end of the numeric operator output left out of
/// residual norms.
pub const BOUNDARY_EXCLUSION: usize = 2;

/// Denominator floor for relative errors.
const REL_FLOOR: f64 = 1e-30;

/// Maximum over `k = 1..=K` of `|coef(D y^{ak+b}) · c_k / c_{k−1} − 1|`,
/// which is the relative error of `coef · c_k − λ c_{k−1}` against
/// `λ c_{k−1}` with `λ` cancelled. Returns infinity if the `k = 0` power is
/// not annihilated.
pub fn residual_coefficient_identity(
    problem: &DegenerateProblem,
    s: u32,
    k_max: usize,
) -> Result<f64> {
    if k_max == 0 {
        return Err(input("K ≥ 1 required"));
    }
    let coeffs = coefficient_sequence(problem, s, k_max)?;
    residual_coefficient_identity_with(problem, s, &coeffs)
}

/// As [`residual_coefficient_identity`] on caller-supplied coefficients
/// `c_0..c_K`.
pub fn residual_coefficient_identity_with(
    problem: &DegenerateProblem,
    s: u32,
    coeffs: &[ScaledReal],
) -> Result<f64> {
    let d = derive_params(problem)?;
    let b = *d.b.get(s as usize).ok_or_else(|| {
        input(format!(
            "branch s = {s} out of range 0..{}",
            problem.orders.i
        ))
    })?;
    if coeffs.len() < 2 {
        return Err(input("need c_0 and at least c_1"));
    }
    if !hilfer_monomial(&problem.orders, b)?.is_zero() {
        return Ok(f64::INFINITY);
    }
    if problem.lambda == Complex64::new(0.0, 0.0) {
        return Ok(0.0);
    }
    let mut worst = 0.0_f64;
    for k in 1..coeffs.len() {
        let h = hilfer_monomial(&problem.orders, d.a * k as f64 + b)?;
        let err = (h.coef.re * coeffs[k].ratio(coeffs[k - 1]) - 1.0).abs();
        worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
    }
    Ok(worst)
}

/// Uniform grid `0, h, ..., y_max` with `points` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub y_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(y_max: f64, points: usize) -> Result<Self> {
        let g = GridSpec { y_max, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.y_max > 0.0) || !self.y_max.is_finite() {
            return Err(input(format!("y_max > 0 required, got {}", self.y_max)));
        }
        if self.points < 16 {
            return Err(input(format!(
                "at least 16 grid points required, got {}",
                self.points
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        self.y_max / (self.points - 1) as f64
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            y_max: 1.0,
            points: 513,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub lhs: Vec<Complex64>,
    pub rhs: Vec<Complex64>,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub excluded_boundary_points: usize,
    pub h: f64,
    pub series_converged: bool,
}

/// Samples `u_s`, applies the numeric operator and compares with
/// `λ y^m u_s` on `[y_max/4, y_max]`.
///
/// The `k = 0` term and any term with a non-positive exponent are passed to
/// the operator as explicit powers; the rest is sampled.
pub fn residual_numeric(
    problem: &DegenerateProblem,
    s: u32,
    grid: GridSpec,
    tol: f64,
) -> Result<ResidualReport> {
    grid.validate()?;
    let u = fundamental_solution(problem, s, DEFAULT_TRUNCATION)?;
    residual_numeric_for(&u, grid, tol)
}

fn residual_numeric_for(u: &SeriesSolution, grid: GridSpec, tol: f64) -> Result<ResidualReport> {
    let problem = &u.problem;
    let h = grid.step();
    let n = grid.points;

    let mut powers = Vec::new();
    let mut weight = Complex64::new(1.0, 0.0);
    for k in 0.. {
        let exponent = u.a * k as f64 + u.b;
        if k > 0 {
            weight *= u.lambda * u.ratio(k);
        }
        if k > 0 && exponent > 0.0 {
            break;
        }
        powers.push(PowerTerm::new(weight, exponent));
        if u.lambda == Complex64::new(0.0, 0.0) {
            break;
        }
    }

    let mut converged = true;
    let mut full = vec![Complex64::new(0.0, 0.0); n];
    let mut regular = vec![Complex64::new(0.0, 0.0); n];
    for (idx, (f, r)) in full.iter_mut().zip(regular.iter_mut()).enumerate().skip(1) {
        let y = idx as f64 * h;
        let rep = u.evaluate(y, tol)?;
        converged &= rep.converged;
        *f = rep.value;
        *r = rep.value - powers.iter().map(|p| p.eval(y)).sum::<Complex64>();
    }
    let regular = SampledFunction::new(0.0, h, regular)?;
    let lhs = hilfer_numeric_split(&powers, &regular, &problem.orders)?;

    let lo = grid.y_max / 4.0;
    let mut report = ResidualReport {
        grid: Vec::new(),
        lhs: Vec::new(),
        rhs: Vec::new(),
        max_abs_error: 0.0,
        max_rel_error: 0.0,
        excluded_boundary_points: 0,
        h,
        series_converged: converged,
    };
    for idx in 0..n {
        let y = idx as f64 * h;
        if y < lo * (1.0 - 1e-12) {
            continue;
        }
        if idx < BOUNDARY_EXCLUSION || idx + BOUNDARY_EXCLUSION >= n {
            report.excluded_boundary_points += 1;
            continue;
        }
        let l = lhs.value(idx);
        let r = problem.lambda * y.powf(problem.m) * full[idx];
        let abs = (l - r).norm();
        report.max_abs_error = report.max_abs_error.max(abs);
        report.max_rel_error = report.max_rel_error.max(abs / r.norm().max(REL_FLOOR));
        report.grid.push(y);
        report.lhs.push(l);
        report.rhs.push(r);
    }
    Ok(report)
}

/// `10^{-6}, 10^{-9}, ..., 10^{-30}`.
pub fn default_ic_points() -> Vec<f64> {
    (2..=10).map(|k| 10f64.powi(-3 * k)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialConditionError {
    pub j: u32,
    pub target: Complex64,
    pub limit: Complex64,
    pub error: f64,
    /// `|d^j g(y) − φ_j|` at each of the supplied points.
    pub trajectory: Vec<f64>,
}

/// For `g(y) = y^{−(1−μ)(i−β)} u(y)` with `u` the Cauchy solution for `phis`,
/// estimates `lim_{y→0+} g^{(j)}(y)` for `j < i` and compares with `φ_j`.
///
/// `g` is the series `Σ_s φ_s/s! Σ_k c_k λ^k y^{ak+s}`, differentiated term
/// by term. The limit is extrapolated from the last three points by removing
/// the two leading powers of the remainder.
pub fn initial_condition_check(
    problem: &DegenerateProblem,
    phis: &[Complex64],
    y_points: &[f64],
) -> Result<Vec<InitialConditionError>> {
    if y_points.len() < 3 {
        return Err(input("at least three points are needed for extrapolation"));
    }
    if y_points.iter().any(|&y| !(y > 0.0)) || y_points.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(input("y_points must be positive and strictly decreasing"));
    }
    let sol = cauchy_solution(problem, phis)?;
    (0..problem.orders.i)
        .map(|j| {
            let values = y_points
                .iter()
                .map(|&y| g_derivative(&sol, j, y))
                .collect::<Result<Vec<_>>>()?;
            let exps = remainder_exponents(&sol, j);
            let tail = &y_points[y_points.len() - 3..];
            let limit = extrapolate(tail, &values[values.len() - 3..], &exps);
            let target = phis[j as usize];
            Ok(InitialConditionError {
                j,
                target,
                limit,
                error: (limit - target).norm(),
                trajectory: values.iter().map(|v| (v - target).norm()).collect(),
            })
        })
        .collect()
}

/// `d^j/dy^j Σ_s w_s Σ_k c_k λ^k y^{ak+s}`.
fn g_derivative(sol: &CauchySolution, j: u32, y: f64) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (s, (w, branch)) in sol.branches.iter().enumerate() {
        if *w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let s = s as f64;
        let z = branch.lambda * y.powf(branch.a);
        let mut t = Complex64::new(1.0, 0.0);
        let rep = sum_series(1e-15, DEFAULT_N_MAX, |k| {
            if k > 0 {
                t *= z * branch.ratio(k);
            }
            let e = branch.a * k as f64 + s;
            let f = falling_product(e, j);
            if f == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                t * f * y.powf(e - f64::from(j)) * w
            }
        })?;
        if !rep.converged {
            return Err(domain(format!(
                "derivative series did not converge at y = {y}"
            )));
        }
        total += rep.value;
    }
    Ok(total)
}

/// Exponents of `g^{(j)}(y) − φ_j` that can carry a nonzero coefficient,
/// smallest first.
fn remainder_exponents(sol: &CauchySolution, j: u32) -> Vec<f64> {
    let jf = f64::from(j);
    let mut exps = Vec::new();
    for (s, (w, branch)) in sol.branches.iter().enumerate() {
        if *w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let s = s as f64;
        if s > jf {
            exps.push(s - jf);
        }
        if branch.lambda != Complex64::new(0.0, 0.0) {
            for k in 1..=4 {
                let e = branch.a * k as f64 + s - jf;
                if falling_product(e + jf, j) != 0.0 {
                    exps.push(e);
                }
            }
        }
    }
    exps.sort_by(|a, b| a.total_cmp(b));
    exps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    exps.truncate(2);
    exps
}

/// Fits `L + Σ C_e y^e` through the points and returns `L`.
fn extrapolate(ys: &[f64], vs: &[Complex64], exps: &[f64]) -> Complex64 {
    let n = exps.len() + 1;
    let ys = &ys[ys.len() - n..];
    let vs = &vs[vs.len() - n..];
    let y0 = ys[0];
    // Columns scaled by y0^e so nothing underflows.
    let mut a: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| {
            std::iter::once(1.0)
                .chain(exps.iter().map(|&e| (y / y0).powf(e)))
                .collect()
        })
        .collect();
    let mut rhs: Vec<Complex64> = vs.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r, &q| a[r][col].abs().total_cmp(&a[q][col].abs()))
            .expect("non-empty");
        a.swap(col, piv);
        rhs.swap(col, piv);
        if a[col][col].abs() < 1e-300 {
            return *vs.last().expect("non-empty");
        }
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            rhs[r] = rhs[r] - rhs[col] * f;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for c in r + 1..n {
            acc -= x[c] * a[r][c];
        }
        x[r] = acc / a[r][r];
    }
    x[0]
}
