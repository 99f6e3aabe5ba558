use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_N_MAX: usize = 10_000;

/// Outcome of a truncated power-series summation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesEvalReport {
    pub value: Complex64,
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    pub converged: bool,
}

impl SeriesEvalReport {
    pub(crate) fn single(value: Complex64) -> Self {
        SeriesEvalReport {
            value,
            terms_used: 1,
            last_term_magnitude: value.norm(),
            converged: true,
        }
    }
}

/// Sums `term(0) + term(1) + ...`.
///
/// Stops at the first `N >= 2` for which the last three terms each satisfy
/// `|t_k| <= tol · max(1, |S_k|)` and `|t_N| < |t_{N-1}|`. If `n_max` terms
/// pass without that happening, the partial sum is returned with
/// `converged = false`; a non-finite partial sum also ends the loop.
pub fn sum_series(
    tol: f64,
    n_max: usize,
    mut term: impl FnMut(usize) -> Complex64,
) -> Result<SeriesEvalReport> {
    if !(tol > 0.0) {
        return Err(input(format!("tolerance must be positive, got {tol}")));
    }
    if n_max == 0 {
        return Err(input("n_max must be at least 1"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0usize;
    let mut prev_mag = f64::INFINITY;
    let mut last_mag = f64::INFINITY;
    for k in 0..n_max {
        let t = term(k);
        sum += t;
        let mag = t.norm();
        last_mag = mag;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Ok(SeriesEvalReport {
                value: sum,
                terms_used: k + 1,
                last_term_magnitude: mag,
                converged: false,
            });
        }
        if mag <= tol * sum.norm().max(1.0) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if k >= 2 && small_run >= 3 && (mag < prev_mag || mag == 0.0) {
            return Ok(SeriesEvalReport {
                value: sum,
                terms_used: k + 1,
                last_term_magnitude: mag,
                converged: true,
            });
        }
        prev_mag = mag;
    }
    Ok(SeriesEvalReport {
        value: sum,
        terms_used: n_max,
        last_term_magnitude: last_mag,
        converged: false,
    })
}
