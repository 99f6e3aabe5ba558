//! Fundamental solutions `u_s` and the Cauchy-type problem for
//! `D^{(α,β)μ} u = λ y^m u`.
//!
//! With `γ = β + μ(α−β)`, `a = m + γ` and `b_s = s − (1−μ)(i−β)`, the
//! branches are
//!
//! ```text
//! u_s(y) = y^{b_s} Σ_k c_k (λ y^a)^k = y^{b_s} E_{γ, a/γ, (a+b_s)/γ − 1}(λ y^a),
//! c_0 = 1,  c_k = c_{k−1} Γ(ak + b_s − γ + 1) / Γ(ak + b_s + 1),
//! ```
//!
//! for `s = 0..i−1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Result};
use crate::fractional_ops::OrderTriple;
use crate::special_functions::{
    gamma_ratio, sum_series, KilbasSaigoParams, ScaledReal, SeriesEvalReport, DEFAULT_N_MAX,
};

/// Coefficients precomputed per branch.
pub const DEFAULT_TRUNCATION: usize = 256;

/// The equation `D^{(α,β)μ} u = λ y^m u` on `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateProblem {
    pub orders: OrderTriple,
    pub m: f64,
    pub lambda: Complex64,
}

impl DegenerateProblem {
    pub fn new(orders: OrderTriple, m: f64, lambda: Complex64) -> Result<Self> {
        let p = DegenerateProblem { orders, m, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.orders.validate()?;
        let m = self.m;
        if !(m >= 0.0) || !m.is_finite() {
            return Err(domain(format!("m ≥ 0 violated (m = {m})")));
        }
        let o = &self.orders;
        let slack = m + o.mu * (o.alpha - o.beta);
        if !(slack >= 0.0) {
            return Err(domain(format!(
                "m + μ(α−β) ≥ 0 violated (m + μ(α−β) = {slack})"
            )));
        }
        if !(self.lambda.re.is_finite() && self.lambda.im.is_finite()) {
            return Err(domain("λ must be finite"));
        }
        Ok(())
    }
}

/// `γ`, `a` and the branch exponents `b_0 < ... < b_{i−1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub gamma: f64,
    pub a: f64,
    pub b: Vec<f64>,
}

pub fn derive_params(problem: &DegenerateProblem) -> Result<DerivedParams> {
    problem.validate()?;
    let o = &problem.orders;
    let gamma = o.gamma();
    let a = problem.m + gamma;
    let p = o.inner_order();
    let b: Vec<f64> = (0..o.i).map(|s| f64::from(s) - p).collect();
    // Implied by the order window, checked anyway since every Gamma argument
    // downstream relies on them.
    let floor = if o.i == 1 { 0.0 } else { f64::from(o.i) - 1.0 };
    if !(gamma > floor) || !(a > 0.0) {
        return Err(domain(format!(
            "γ > {floor} and a = m + γ > 0 violated (γ = {gamma})"
        )));
    }
    if let Some(bs) = b
        .iter()
        .find(|&&bs| !(bs > -1.0 && problem.m + bs + 1.0 > 0.0))
    {
        return Err(domain(format!(
            "b_s > −1 and m + b_s + 1 > 0 violated (b_s = {bs})"
        )));
    }
    Ok(DerivedParams { gamma, a, b })
}

fn check_branch(problem: &DegenerateProblem, s: u32) -> Result<()> {
    if s >= problem.orders.i {
        return Err(input(format!(
            "branch index s must satisfy 0 ≤ s ≤ i − 1 = {}, got {s}",
            problem.orders.i - 1
        )));
    }
    Ok(())
}

/// `c_k / c_{k−1} = Γ(ak + b − γ + 1) / Γ(ak + b + 1)`.
fn coefficient_ratio(a: f64, b: f64, gamma: f64, k: usize) -> Result<f64> {
    let x = a * k as f64 + b + 1.0;
    let lower = x - gamma;
    if !(lower > 0.0) {
        return Err(domain(format!(
            "a(j+1) + b − (β + μ(α−β)) + 1 > 0 violated at k = {k} (value {lower})"
        )));
    }
    gamma_ratio(lower, x)
}

/// `c_0, ..., c_K` for branch `s`.
pub fn coefficient_sequence(
    problem: &DegenerateProblem,
    s: u32,
    k_max: usize,
) -> Result<Vec<ScaledReal>> {
    check_branch(problem, s)?;
    let d = derive_params(problem)?;
    let b = d.b[s as usize];
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(ScaledReal::ONE);
    for k in 1..=k_max {
        let r = coefficient_ratio(d.a, b, d.gamma, k)?;
        out.push(out[k - 1] * r);
    }
    Ok(out)
}

/// `u_s(y) = y^b Σ_k c_k (λ y^a)^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSolution {
    pub problem: DegenerateProblem,
    pub s: u32,
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub lambda: Complex64,
    pub coeffs: Vec<ScaledReal>,
}

impl SeriesSolution {
    /// Number of precomputed coefficients beyond `c_0`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The Kilbas–Saigo triple `(γ, a/γ, (a+b)/γ − 1)`.
    pub fn ks_params(&self) -> KilbasSaigoParams {
        KilbasSaigoParams {
            alpha: self.gamma,
            m: self.a / self.gamma,
            l: (self.a + self.b) / self.gamma - 1.0,
        }
    }

    /// `c_k / c_{k−1}` for `k ≥ 1`.
    pub fn ratio(&self, k: usize) -> f64 {
        if k < self.coeffs.len() {
            self.coeffs[k].ratio(self.coeffs[k - 1])
        } else {
            coefficient_ratio(self.a, self.b, self.gamma, k)
                .expect("validated problem keeps Gamma arguments positive")
        }
    }

    /// `Σ_k c_k z^k` at `z = λ y^a`, without the `y^b` prefactor. Terms past
    /// the stored truncation are generated on the fly.
    pub fn series_at(&self, z: Complex64, tol: f64, n_max: usize) -> Result<SeriesEvalReport> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(SeriesEvalReport::single(Complex64::new(1.0, 0.0)));
        }
        let mut t = Complex64::new(1.0, 0.0);
        sum_series(tol, n_max, |k| {
            if k > 0 {
                t *= z * self.ratio(k);
            }
            t
        })
    }

    pub fn evaluate(&self, y: f64, tol: f64) -> Result<SeriesEvalReport> {
        self.evaluate_with(y, tol, DEFAULT_N_MAX)
    }

    pub fn evaluate_with(&self, y: f64, tol: f64, n_max: usize) -> Result<SeriesEvalReport> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(domain(format!("evaluation needs y > 0, got {y}")));
        }
        let z = self.lambda * y.powf(self.a);
        let mut r = self.series_at(z, tol, n_max)?;
        r.value *= y.powf(self.b);
        Ok(r)
    }
}

pub fn fundamental_solution(
    problem: &DegenerateProblem,
    s: u32,
    k_max: usize,
) -> Result<SeriesSolution> {
    let d = derive_params(problem)?;
    let coeffs = coefficient_sequence(problem, s, k_max)?;
    Ok(SeriesSolution {
        problem: *problem,
        s,
        gamma: d.gamma,
        a: d.a,
        b: d.b[s as usize],
        lambda: problem.lambda,
        coeffs,
    })
}

/// `Σ_{k<i} (φ_k / k!) u_k(y)`, the solution with
/// `lim_{y→0+} d^j/dy^j [y^{−(1−μ)(i−β)} u(y)] = φ_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchySolution {
    pub problem: DegenerateProblem,
    pub phis: Vec<Complex64>,
    pub branches: Vec<(Complex64, SeriesSolution)>,
}

impl CauchySolution {
    pub fn evaluate(&self, y: f64, tol: f64) -> Result<SeriesEvalReport> {
        let mut total = SeriesEvalReport {
            value: Complex64::new(0.0, 0.0),
            terms_used: 0,
            last_term_magnitude: 0.0,
            converged: true,
        };
        for (w, branch) in &self.branches {
            let r = branch.evaluate(y, tol)?;
            total.value += w * r.value;
            total.terms_used = total.terms_used.max(r.terms_used);
            total.last_term_magnitude = total
                .last_term_magnitude
                .max(w.norm() * r.last_term_magnitude);
            total.converged &= r.converged;
        }
        Ok(total)
    }
}

pub fn cauchy_solution(problem: &DegenerateProblem, phis: &[Complex64]) -> Result<CauchySolution> {
    let i = problem.orders.i as usize;
    if phis.len() != i {
        return Err(input(format!(
            "expected i = {i} initial values φ_0..φ_{}, got {}",
            i - 1,
            phis.len()
        )));
    }
    let mut factorial = 1.0;
    let mut branches = Vec::with_capacity(i);
    for (k, phi) in phis.iter().enumerate() {
        if k > 0 {
            factorial *= k as f64;
        }
        let u = fundamental_solution(problem, k as u32, DEFAULT_TRUNCATION)?;
        branches.push((phi / factorial, u));
    }
    Ok(CauchySolution {
        problem: *problem,
        phis: phis.to_vec(),
        branches,
    })
}

/// Kilbas–Saigo parameters per branch in the Hilfer case `α = β`:
/// `(α, m/α + 1, (m + s − (1−μ)(i−α))/α)`.
pub fn hilfer_reduction_params(problem: &DegenerateProblem) -> Result<Vec<KilbasSaigoParams>> {
    problem.validate()?;
    let o = &problem.orders;
    if o.alpha != o.beta {
        return Err(input(format!(
            "Hilfer reduction needs α = β, got α = {}, β = {}",
            o.alpha, o.beta
        )));
    }
    let alpha = o.alpha;
    let p = (1.0 - o.mu) * (f64::from(o.i) - alpha);
    (0..o.i)
        .map(|s| {
            KilbasSaigoParams::new(
                alpha,
                problem.m / alpha + 1.0,
                (problem.m + f64::from(s) - p) / alpha,
            )
        })
        .collect()
}
