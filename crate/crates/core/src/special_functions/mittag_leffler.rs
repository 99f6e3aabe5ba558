use num_complex::Complex64;

use super::series::{sum_series, SeriesEvalReport, DEFAULT_N_MAX};
use crate::error::{domain, Result};

/// Two-parameter Mittag-Leffler function `E_{a,b}(z) = Σ z^k / Γ(ak+b)` by
/// direct summation.
///
/// Each term is formed as `exp(k·ln|z| - lnΓ(ak+b))` times its phase, so
/// neither `z^k` nor `Γ(ak+b)` is materialized. Kept deliberately separate
/// from the Kilbas–Saigo recurrence so the two can cross-check each other.
pub fn mittag_leffler(a: f64, b: f64, z: Complex64, tol: f64) -> Result<SeriesEvalReport> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(domain(format!(
            "Mittag-Leffler requires a > 0 and b > 0, got ({a}, {b})"
        )));
    }
    let inv_gamma = |x: f64| (-libm::lgamma(x)).exp();
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesEvalReport::single(Complex64::new(inv_gamma(b), 0.0)));
    }
    let ln_r = z.norm().ln();
    let theta = z.arg();
    sum_series(tol, DEFAULT_N_MAX, |k| {
        let kf = k as f64;
        let ln_mag = kf * ln_r - libm::lgamma(a * kf + b);
        Complex64::from_polar(ln_mag.exp(), kf * theta)
    })
}
