use std::sync::RwLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::gamma_ratio;
use super::scaled::ScaledReal;
use super::series::{sum_series, SeriesEvalReport};
use crate::error::{domain, Result};

/// Parameters `(α, m, l)` of the Kilbas–Saigo function
///
/// ```text
/// E_{α,m,l}(z) = Σ_{i≥0} c_i z^i,   c_0 = 1,
/// c_i = Π_{j=0}^{i-1} Γ(α(jm+l)+1) / Γ(α(jm+l+1)+1).
/// ```
///
/// Valid when `α > 0`, `m > 0` and `α·l > -1`; then every Gamma argument in
/// the product is positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KilbasSaigoParams {
    pub alpha: f64,
    pub m: f64,
    pub l: f64,
}

impl KilbasSaigoParams {
    pub fn new(alpha: f64, m: f64, l: f64) -> Result<Self> {
        let p = KilbasSaigoParams { alpha, m, l };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let KilbasSaigoParams { alpha, m, l } = *self;
        if !(alpha.is_finite() && m.is_finite() && l.is_finite()) {
            return Err(domain("Kilbas-Saigo parameters must be finite"));
        }
        if !(alpha > 0.0) {
            return Err(domain(format!("Kilbas-Saigo α > 0 violated (α = {alpha})")));
        }
        if !(m > 0.0) {
            return Err(domain(format!("Kilbas-Saigo m > 0 violated (m = {m})")));
        }
        if !(alpha * l > -1.0) {
            return Err(domain(format!(
                "Kilbas-Saigo α·l > -1 violated (α·l = {})",
                alpha * l
            )));
        }
        Ok(())
    }

    /// `c_i / c_{i-1}` for `i >= 1`.
    fn ratio(&self, i: usize) -> f64 {
        let j = (i - 1) as f64;
        let lower = self.alpha * (j * self.m + self.l) + 1.0;
        let upper = self.alpha * (j * self.m + self.l + 1.0) + 1.0;
        gamma_ratio(lower, upper).expect("validated parameters keep Gamma arguments positive")
    }
}

#[derive(Debug)]
struct Coefficients {
    values: Vec<ScaledReal>,
    // ratios[i] = c_i / c_{i-1}; ratios[0] is unused.
    ratios: Vec<f64>,
}

/// A Kilbas–Saigo function with its coefficient sequence cached.
///
/// The cache only grows, and each entry is a deterministic function of the
/// parameters, so concurrent evaluations see the same coefficients they
/// would have computed on their own.
#[derive(Debug)]
pub struct KilbasSaigo {
    params: KilbasSaigoParams,
    cache: RwLock<Coefficients>,
}

const CHUNK: usize = 64;

impl KilbasSaigo {
    pub fn new(params: KilbasSaigoParams) -> Result<Self> {
        params.validate()?;
        Ok(KilbasSaigo {
            params,
            cache: RwLock::new(Coefficients {
                values: vec![ScaledReal::ONE],
                ratios: vec![1.0],
            }),
        })
    }

    pub fn params(&self) -> KilbasSaigoParams {
        self.params
    }

    fn ensure(&self, n: usize) {
        if self.cache.read().unwrap().values.len() >= n {
            return;
        }
        let mut cache = self.cache.write().unwrap();
        let target = n.div_ceil(CHUNK) * CHUNK;
        while cache.values.len() < target {
            let i = cache.values.len();
            let r = self.params.ratio(i);
            let next = cache.values[i - 1] * r;
            cache.values.push(next);
            cache.ratios.push(r);
        }
    }

    /// `c_i`.
    pub fn coefficient(&self, i: usize) -> ScaledReal {
        self.ensure(i + 1);
        self.cache.read().unwrap().values[i]
    }

    /// `c_0, ..., c_{n-1}`.
    pub fn coefficients(&self, n: usize) -> Vec<ScaledReal> {
        self.ensure(n);
        self.cache.read().unwrap().values[..n].to_vec()
    }

    fn ratio(&self, i: usize) -> f64 {
        self.ensure(i + 1);
        self.cache.read().unwrap().ratios[i]
    }

    pub fn evaluate(&self, z: Complex64, tol: f64, n_max: usize) -> Result<SeriesEvalReport> {
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
}

/// `E_{α,m,l}(z)` with a fresh coefficient sequence.
pub fn kilbas_saigo(
    params: KilbasSaigoParams,
    z: Complex64,
    tol: f64,
    n_max: usize,
) -> Result<SeriesEvalReport> {
    KilbasSaigo::new(params)?.evaluate(z, tol, n_max)
}
