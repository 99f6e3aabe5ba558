use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special_functions::gamma_ratio;

/// Orders `(α, β, μ, i)` of `D^{(α,β)μ}`: `i−1 < α, β < i`, `0 ≤ μ ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderTriple {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub i: u32,
}

impl OrderTriple {
    pub fn new(alpha: f64, beta: f64, mu: f64, i: u32) -> Result<Self> {
        let o = OrderTriple { alpha, beta, mu, i };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        let OrderTriple { alpha, beta, mu, i } = *self;
        if i == 0 {
            return Err(domain("integer order i ≥ 1 violated (i = 0)"));
        }
        let lo = f64::from(i) - 1.0;
        let hi = f64::from(i);
        if !(alpha > lo && alpha < hi) {
            return Err(domain(format!(
                "i − 1 < α < i violated (α = {alpha}, i = {i})"
            )));
        }
        if !(beta > lo && beta < hi) {
            return Err(domain(format!(
                "i − 1 < β < i violated (β = {beta}, i = {i})"
            )));
        }
        if !(0.0..=1.0).contains(&mu) {
            return Err(domain(format!("0 ≤ μ ≤ 1 violated (μ = {mu})")));
        }
        Ok(())
    }

    /// Order of the inner integral, `(1−μ)(i−β)`, in `[0, 1)`.
    pub fn inner_order(&self) -> f64 {
        (1.0 - self.mu) * (f64::from(self.i) - self.beta)
    }

    /// Order of the outer integral, `μ(i−α)`, in `[0, 1)`.
    pub fn outer_order(&self) -> f64 {
        self.mu * (f64::from(self.i) - self.alpha)
    }

    /// Effective order `γ = β + μ(α−β)`.
    pub fn gamma(&self) -> f64 {
        self.beta + self.mu * (self.alpha - self.beta)
    }
}

/// `coef · y^exponent` on `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coef: Complex64,
    pub exponent: f64,
}

impl PowerTerm {
    pub fn new(coef: Complex64, exponent: f64) -> Self {
        PowerTerm { coef, exponent }
    }

    pub fn real(coef: f64, exponent: f64) -> Self {
        PowerTerm::new(Complex64::new(coef, 0.0), exponent)
    }

    pub fn zero(exponent: f64) -> Self {
        PowerTerm::real(0.0, exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.coef == Complex64::new(0.0, 0.0)
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        if self.is_zero() {
            return self.coef;
        }
        self.coef * y.powf(self.exponent)
    }

    /// Exact `i`-th derivative; integer powers below `i` map to the zero
    /// term through the vanishing falling product.
    pub fn derivative(&self, i: u32) -> PowerTerm {
        let e = self.exponent - f64::from(i);
        if self.is_zero() || vanishes(self.exponent, i) {
            return PowerTerm::zero(e);
        }
        PowerTerm::new(self.coef * falling_product(self.exponent, i), e)
    }
}

/// `a(a−1)⋯(a−i+1)`.
pub fn falling_product(a: f64, i: u32) -> f64 {
    (0..i).map(|k| a - f64::from(k)).product()
}

/// `|(a)_i| < 1e−12·(|a|+1)^i`: the falling product is zero up to the
/// rounding in `a`.
fn vanishes(a: f64, i: u32) -> bool {
    falling_product(a, i).abs() < 1e-12 * (a.abs() + 1.0).powi(i as i32)
}

/// `I^ν y^δ = Γ(δ+1)/Γ(δ+1+ν) · y^{δ+ν}` for `ν > 0`, `δ > −1`.
pub fn rl_integral_monomial(nu: f64, delta: f64) -> Result<PowerTerm> {
    if !(nu > 0.0) {
        return Err(domain(format!(
            "fractional integral order ν > 0 violated (ν = {nu})"
        )));
    }
    if !(delta > -1.0) {
        return Err(domain(format!(
            "δ > −1 violated (δ = {delta}): the fractional integral of y^δ diverges"
        )));
    }
    Ok(PowerTerm::real(
        gamma_ratio(delta + 1.0, delta + 1.0 + nu)?,
        delta + nu,
    ))
}

/// `D^{(α,β)μ} y^δ` in closed form.
///
/// Two cases are admissible: `δ + (1−μ)(i−β) − i > −1`, where
///
/// ```text
/// coef = Γ(δ+1)/Γ(δ+1+p) · (δ+p)_i · Γ(δ+1+p−i)/Γ(δ+1+p−i+q),
/// ```
///
/// with `p = (1−μ)(i−β)`, `q = μ(i−α)`, `(a)_i` the falling product; and the
/// kernel powers `δ = s − p`, `s = 0..i−1`, which the operator annihilates.
/// The exponent is `δ − γ` in both cases.
pub fn hilfer_monomial(orders: &OrderTriple, delta: f64) -> Result<PowerTerm> {
    orders.validate()?;
    let p = orders.inner_order();
    let q = orders.outer_order();
    let i = orders.i;
    let exponent = delta - orders.gamma();
    if !(delta > -1.0) {
        return Err(domain(format!(
            "δ > −1 violated (δ = {delta}): y^δ is not locally integrable"
        )));
    }
    if vanishes(delta + p, i) {
        return Ok(PowerTerm::zero(exponent));
    }
    let shifted = delta + p - f64::from(i);
    if !(shifted > -1.0) {
        return Err(domain(format!(
            "δ + (1−μ)(i−β) − i > −1 violated (value {shifted}) and δ is not a kernel power s − (1−μ)(i−β)"
        )));
    }
    let coef = gamma_ratio(delta + 1.0, delta + 1.0 + p)?
        * falling_product(delta + p, i)
        * gamma_ratio(shifted + 1.0, shifted + 1.0 + q)?;
    Ok(PowerTerm::real(coef, exponent))
}
