use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{derivative, rl_integral_numeric, SampledFunction};
use super::monomial::{falling_product, rl_integral_monomial, OrderTriple, PowerTerm};
use crate::error::{domain, Error, Result};
use crate::special_functions::log_gamma;

/// `f(y) = Σ powers_k(y) + regular(y)`: explicit power terms carry the
/// behaviour at the origin that samples cannot represent (negative or
/// kernel exponents); the regular part must be finite at every node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitFunction {
    pub powers: Vec<PowerTerm>,
    pub regular: SampledFunction,
}

impl SplitFunction {
    /// Value at node `n`. Power terms are evaluated at the node, so node 0
    /// is only meaningful when every exponent is non-negative.
    pub fn value(&self, n: usize) -> Complex64 {
        let y = self.regular.node(n);
        self.powers
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.eval(y))
            .sum::<Complex64>()
            + self.regular.values[n]
    }
}

/// Numeric `D^{(α,β)μ} f` on a sampled function (no explicit power part).
///
/// Node 0 and the last node use one-sided differences and, together with
/// their neighbours, should be treated as low-confidence.
pub fn hilfer_numeric(f: &SampledFunction, orders: &OrderTriple) -> Result<SampledFunction> {
    let out = hilfer_numeric_split(&[], f, orders)?;
    Ok(out.regular)
}

/// Numeric `D^{(α,β)μ}` on `Σ powers + regular`.
///
/// Power terms go through the operator exactly (fractional integral of a
/// power, then the power rule). For the sampled part, with `p = (1−μ)(i−β)`,
/// `q = μ(i−α)` and `g = I^p f`, the outer integral is commuted past the
/// derivatives:
///
/// ```text
/// I^q g^{(i)} = (I^q g)^{(i)} − Σ_{j<i} g^{(j)}(0) · (q+j)_i / Γ(q+j+1) · y^{q+j−i}
/// ```
///
/// so the finite differences act on `I^q g`, which is smooth away from the
/// origin, instead of on `g^{(i)}`, which is generally singular there.
/// `g(0)` is the node-0 sample. For `j ≥ 1`, `g^{(j)}(0)` is the one-sided
/// difference of `f` when `p = 0`; when `p > 0` it is zero for every
/// regular part in the operator's domain (kernel powers must be passed in
/// `powers`).
///
/// Supports `i ∈ {1, 2}`.
pub fn hilfer_numeric_split(
    powers: &[PowerTerm],
    regular: &SampledFunction,
    orders: &OrderTriple,
) -> Result<SplitFunction> {
    orders.validate()?;
    if orders.i > 2 {
        return Err(Error::Unsupported(format!(
            "numeric operator supports i ∈ {{1, 2}}, got i = {}",
            orders.i
        )));
    }
    let p = orders.inner_order();
    let q = orders.outer_order();
    let i = orders.i;

    let powers = powers
        .iter()
        .map(|t| hilfer_power(t, p, q, i))
        .collect::<Result<Vec<_>>>()?;

    let g = rl_integral_numeric(regular, p)?;
    if q == 0.0 {
        let d = derivative(&g, i)?;
        return Ok(SplitFunction { powers, regular: d });
    }
    let outer = rl_integral_numeric(&g, q)?;
    let mut d = derivative(&outer, i)?;
    for j in 0..i {
        let boundary = match j {
            0 => g.values[0],
            _ if p > 0.0 => Complex64::new(0.0, 0.0),
            _ => derivative(regular, j)?.values[0],
        };
        if boundary == Complex64::new(0.0, 0.0) {
            continue;
        }
        let order = q + f64::from(j);
        let c = falling_product(order, i) * (-log_gamma(order + 1.0)?).exp();
        let e = order - f64::from(i);
        for (n, v) in d.values.iter_mut().enumerate().skip(1) {
            *v -= boundary * c * regular.node(n).powf(e);
        }
    }
    Ok(SplitFunction { powers, regular: d })
}

fn hilfer_power(t: &PowerTerm, p: f64, q: f64, i: u32) -> Result<PowerTerm> {
    let inner = if p > 0.0 && !t.is_zero() {
        let m = rl_integral_monomial(p, t.exponent)?;
        PowerTerm::new(t.coef * m.coef, m.exponent)
    } else {
        PowerTerm::new(t.coef, t.exponent + p)
    };
    let d = inner.derivative(i);
    if q == 0.0 {
        return Ok(d);
    }
    if d.is_zero() {
        return Ok(PowerTerm::zero(d.exponent + q));
    }
    if !(d.exponent > -1.0) {
        return Err(domain(format!(
            "δ + (1−μ)(i−β) − i > −1 violated for power term y^{}",
            t.exponent
        )));
    }
    let m = rl_integral_monomial(q, d.exponent)?;
    Ok(PowerTerm::new(d.coef * m.coef, m.exponent))
}
