use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Result};
use crate::special_functions::log_gamma;

/// Complex samples `values[n] = f(y_min + n·h)` on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub y_min: f64,
    pub h: f64,
    pub values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(y_min: f64, h: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(input(format!("grid step must be positive, got {h}")));
        }
        if !(y_min >= 0.0) {
            return Err(input(format!(
                "grid origin must be non-negative, got {y_min}"
            )));
        }
        if values.len() < 3 {
            return Err(input(format!(
                "grid needs at least 3 samples, got {}",
                values.len()
            )));
        }
        Ok(SampledFunction { y_min, h, values })
    }

    /// Samples `f` at `y_min + n·h` for `n = 0..len`.
    pub fn from_fn(
        y_min: f64,
        h: f64,
        len: usize,
        mut f: impl FnMut(f64) -> Complex64,
    ) -> Result<Self> {
        let values = (0..len).map(|n| f(y_min + n as f64 * h)).collect();
        Self::new(y_min, h, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, n: usize) -> f64 {
        self.y_min + n as f64 * self.h
    }

    pub(crate) fn with_values(&self, values: Vec<Complex64>) -> Self {
        SampledFunction {
            y_min: self.y_min,
            h: self.h,
            values,
        }
    }
}

/// Binomial coefficients `C(c, k)` for `k = 0..n`.
fn binomials(c: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut b = 1.0;
    out.push(b);
    for k in 1..=n {
        b *= (c - (k - 1) as f64) / k as f64;
        out.push(b);
    }
    out
}

/// Below this index the weights are formed directly; above it the direct
/// differences cancel and a series in `1/k` is used.
const SERIES_FROM: usize = 16;

/// Product-trapezoidal weights for `I^ν` with `c = ν + 1`:
/// `interior[k] = (k+1)^c − 2k^c + (k−1)^c` and
/// `start[n] = (n−1)^c − (n−1−ν)·n^ν`.
struct TrapezoidWeights {
    interior: Vec<f64>,
    start: Vec<f64>,
}

impl TrapezoidWeights {
    fn new(nu: f64, n: usize) -> Self {
        let c = nu + 1.0;
        let bin = binomials(c, 24);
        let interior = (0..=n)
            .map(|k| {
                if k == 0 {
                    0.0
                } else if k < SERIES_FROM {
                    let k = k as f64;
                    (k + 1.0).powf(c) - 2.0 * k.powf(c) + (k - 1.0).powf(c)
                } else {
                    // k^c · 2 Σ_{j≥1} C(c, 2j) k^{-2j}
                    let k = k as f64;
                    let x2 = 1.0 / (k * k);
                    let mut sum = 0.0;
                    let mut pow = x2;
                    for j in 1..=10 {
                        sum += bin[2 * j] * pow;
                        pow *= x2;
                    }
                    2.0 * k.powf(c) * sum
                }
            })
            .collect();
        let start = (0..=n)
            .map(|m| {
                if m == 0 {
                    0.0
                } else if m < SERIES_FROM {
                    let m = m as f64;
                    (m - 1.0).powf(c) - (m - 1.0 - nu) * m.powf(nu)
                } else {
                    // m^c · Σ_{j≥2} C(c, j) (−1/m)^j
                    let m = m as f64;
                    let x = -1.0 / m;
                    let mut sum = 0.0;
                    let mut pow = x * x;
                    for b in &bin[2..] {
                        sum += b * pow;
                        pow *= x;
                    }
                    m.powf(c) * sum
                }
            })
            .collect();
        TrapezoidWeights { interior, start }
    }
}

/// Riemann–Liouville integral `I^ν f(y) = (1/Γ(ν)) ∫₀^y (y−t)^{ν−1} f(t) dt`
/// at every grid node.
///
/// `f` is replaced by its piecewise-linear interpolant and the kernel
/// moments over each cell are integrated exactly, which gives second-order
/// accuracy for smooth `f` despite the singular kernel. `ν = 0` returns `f`.
pub fn rl_integral_numeric(f: &SampledFunction, nu: f64) -> Result<SampledFunction> {
    if f.y_min != 0.0 {
        return Err(input(format!(
            "fractional integral needs samples starting at 0, got y_min = {}",
            f.y_min
        )));
    }
    if f.len() < 3 {
        return Err(input("grid needs at least 3 samples"));
    }
    if !(0.0..2.0).contains(&nu) {
        return Err(domain(format!(
            "numeric fractional integral needs 0 ≤ ν < 2, got {nu}"
        )));
    }
    if nu == 0.0 {
        return Ok(f.clone());
    }
    let n_last = f.len() - 1;
    let w = TrapezoidWeights::new(nu, n_last);
    let scale = (nu * f.h.ln() - log_gamma(nu + 2.0)?).exp();
    let fv = &f.values;
    let mut out = Vec::with_capacity(f.len());
    out.push(Complex64::new(0.0, 0.0));
    for n in 1..=n_last {
        let mut acc = fv[0] * w.start[n] + fv[n];
        for j in 1..n {
            acc += fv[j] * w.interior[n - j];
        }
        out.push(acc * scale);
    }
    Ok(f.with_values(out))
}

/// First or second derivative by second-order finite differences: central
/// in the interior, one-sided at both ends.
pub fn derivative(f: &SampledFunction, order: u32) -> Result<SampledFunction> {
    let v = &f.values;
    let n = v.len();
    let h = f.h;
    match order {
        0 => Ok(f.clone()),
        1 => {
            if n < 3 {
                return Err(input("first derivative needs at least 3 samples"));
            }
            let mut out = Vec::with_capacity(n);
            out.push((-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h));
            for k in 1..n - 1 {
                out.push((v[k + 1] - v[k - 1]) / (2.0 * h));
            }
            out.push((3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h));
            Ok(f.with_values(out))
        }
        2 => {
            if n < 4 {
                return Err(input("second derivative needs at least 4 samples"));
            }
            let h2 = h * h;
            let mut out = Vec::with_capacity(n);
            out.push((2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2);
            for k in 1..n - 1 {
                out.push((v[k + 1] - 2.0 * v[k] + v[k - 1]) / h2);
            }
            out.push((2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2);
            Ok(f.with_values(out))
        }
        _ => Err(crate::error::Error::Unsupported(format!(
            "finite-difference derivative of order {order}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize, f: impl Fn(f64) -> f64) -> SampledFunction {
        let h = 1.0 / n as f64;
        SampledFunction::from_fn(0.0, h, n + 1, |y| Complex64::new(f(y), 0.0)).unwrap()
    }

    #[test]
    fn weights_match_direct_formula_in_overlap() {
        for &nu in &[0.1, 0.5, 0.97, 1.5] {
            let w = TrapezoidWeights::new(nu, 40);
            let c = nu + 1.0;
            for k in SERIES_FROM..24 {
                let kf = k as f64;
                let direct = (kf + 1.0).powf(c) - 2.0 * kf.powf(c) + (kf - 1.0).powf(c);
                assert!(
                    ((w.interior[k] - direct) / direct).abs() < 1e-11,
                    "ν={nu} k={k}"
                );
                let s = (kf - 1.0).powf(c) - (kf - 1.0 - nu) * kf.powf(nu);
                assert!(((w.start[k] - s) / s).abs() < 1e-10, "ν={nu} n={k}");
            }
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let f = grid(64, |_| 0.0);
        let g = rl_integral_numeric(&f, 0.4).unwrap();
        assert!(g.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn plain_integral_of_constant() {
        let f = grid(64, |_| 1.0);
        let g = rl_integral_numeric(&f, 1.0).unwrap();
        for (n, v) in g.values.iter().enumerate() {
            assert!((v.re - g.node(n)).abs() < 1e-14, "node {n}");
        }
    }

    #[test]
    fn linear_data_is_integrated_exactly() {
        // The interpolant reproduces t exactly, so only rounding remains:
        // I^{1/2} t = Γ(2)/Γ(5/2) t^{3/2}.
        let f = grid(128, |t| t);
        let g = rl_integral_numeric(&f, 0.5).unwrap();
        let c = 1.0 / libm::tgamma(2.5);
        for (n, v) in g.values.iter().enumerate() {
            let y = g.node(n);
            assert!((v.re - c * y.powf(1.5)).abs() < 1e-13, "node {n}");
        }
        // 1/Γ(5/2) at y = 1
        assert!((g.values[128].re - 0.752_252_778_063_675_1).abs() < 1e-13);
    }

    #[test]
    fn smooth_data_converges_at_second_order() {
        // I^{0.5} t² = Γ(3)/Γ(3.5) y^{2.5}
        let exact = 2.0 / libm::tgamma(3.5);
        let err = |n: usize| {
            let g = rl_integral_numeric(&grid(n, |t| t * t), 0.5).unwrap();
            (g.values[n].re - exact).abs()
        };
        let (e1, e2) = (err(64), err(128));
        let order = (e1 / e2).log2();
        assert!(order > 1.9, "order {order}");
    }

    #[test]
    fn semigroup_spot_check() {
        let gap = |n: usize| {
            let f = grid(n, |t| (1.3 * t).cos() + t);
            let twice = rl_integral_numeric(&rl_integral_numeric(&f, 0.3).unwrap(), 0.45).unwrap();
            let once = rl_integral_numeric(&f, 0.75).unwrap();
            (n / 4..=n)
                .map(|k| (twice.values[k] - once.values[k]).norm())
                .fold(0.0, f64::max)
        };
        // I^{0.3} f ~ f(0) y^{0.3} near the origin, so the second pass sees a
        // non-smooth integrand: order 1.3 away from the origin.
        let (coarse, fine) = (gap(256), gap(512));
        assert!(fine < 5e-3, "gap {fine}");
        assert!((coarse / fine).log2() > 1.2, "{coarse} -> {fine}");
    }

    #[test]
    fn rejects_bad_input() {
        let f = grid(8, |t| t);
        assert!(rl_integral_numeric(&f, 2.0).is_err());
        assert!(rl_integral_numeric(&f, -0.1).is_err());
        let shifted = SampledFunction::new(0.5, 0.1, vec![Complex64::new(0.0, 0.0); 5]).unwrap();
        assert!(rl_integral_numeric(&shifted, 0.5).is_err());
        assert!(SampledFunction::new(0.0, 0.1, vec![Complex64::new(0.0, 0.0); 2]).is_err());
        assert!(derivative(&f, 3).is_err());
    }

    #[test]
    fn differences_exact_on_quadratics() {
        let f = grid(16, |t| 3.0 * t * t - t + 2.0);
        let d1 = derivative(&f, 1).unwrap();
        let d2 = derivative(&f, 2).unwrap();
        for n in 0..f.len() {
            let y = f.node(n);
            assert!((d1.values[n].re - (6.0 * y - 1.0)).abs() < 1e-11);
            assert!((d2.values[n].re - 6.0).abs() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn integral_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, nu in 0.05f64..1.95) {
            let f = grid(64, |t| t.sin());
            let g = grid(64, |t| (t * t).exp());
            let combo = f.with_values(
                f.values.iter().zip(&g.values).map(|(x, y)| x * a + y * b).collect());
            let lhs = rl_integral_numeric(&combo, nu).unwrap();
            let fi = rl_integral_numeric(&f, nu).unwrap();
            let gi = rl_integral_numeric(&g, nu).unwrap();
            for n in 0..lhs.len() {
                let rhs = fi.values[n] * a + gi.values[n] * b;
                prop_assert!((lhs.values[n] - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
            }
        }
    }
}
