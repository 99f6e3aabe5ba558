use crate::error::{domain, Result};

/// Below this argument the log-Gamma difference is taken directly; above it
/// the Stirling form is differenced term by term, which keeps the result
/// accurate when both logarithms are in the thousands.
const STIRLING_CUTOFF: f64 = 10.0;

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `ln(Γ(p)/Γ(q))` for `p, q > 0`.
pub fn ln_gamma_ratio(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0) || !(q > 0.0) || !p.is_finite() || !q.is_finite() {
        return Err(domain(format!(
            "gamma_ratio requires positive arguments, got ({p}, {q})"
        )));
    }
    if p == q {
        return Ok(0.0);
    }
    if p.min(q) < STIRLING_CUTOFF {
        return Ok(libm::lgamma(p) - libm::lgamma(q));
    }
    // (p-1/2)ln p - (q-1/2)ln q - (p-q) regrouped so that no term grows like p ln p.
    let d = p - q;
    let main = d * (p.ln() - 1.0) + (q - 0.5) * (d / q).ln_1p();
    Ok(main + stirling_remainder(p) - stirling_remainder(q))
}

/// `Γ(p)/Γ(q)` evaluated in log space; finite whenever the ratio itself is
/// representable, even where `Γ(p)` alone would overflow.
pub fn gamma_ratio(p: f64, q: f64) -> Result<f64> {
    ln_gamma_ratio(p, q).map(f64::exp)
}

/// `lnΓ(x) - [(x-1/2)ln x - x + ln(2π)/2]` for large `x`.
fn stirling_remainder(x: f64) -> f64 {
    // B_{2k} / (2k (2k-1)), k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in C.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}
