use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// A non-negative real stored as `mantissa · 2^exponent`, mantissa in
/// `[0.5, 1)`.
///
/// Series coefficients here decay like reciprocal Gamma functions and fall
/// below `f64::MIN_POSITIVE` after a few hundred terms; keeping the binary
/// exponent separate preserves their relative precision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledReal {
    mantissa: f64,
    exponent: i64,
}

impl ScaledReal {
    pub const ONE: ScaledReal = ScaledReal {
        mantissa: 0.5,
        exponent: 1,
    };

    pub const ZERO: ScaledReal = ScaledReal {
        mantissa: 0.0,
        exponent: 0,
    };

    pub fn from_f64(x: f64) -> Self {
        debug_assert!(x >= 0.0 && x.is_finite(), "ScaledReal::from_f64({x})");
        if x == 0.0 {
            return Self::ZERO;
        }
        let (mantissa, exponent) = libm::frexp(x);
        ScaledReal {
            mantissa,
            exponent: exponent as i64,
        }
    }

    /// `exp(ln_value)` without under- or overflow.
    pub fn from_ln(ln_value: f64) -> Self {
        let e2 = (ln_value / std::f64::consts::LN_2).floor();
        let rest = ln_value - e2 * std::f64::consts::LN_2;
        let scaled = Self::from_f64(rest.exp());
        ScaledReal {
            mantissa: scaled.mantissa,
            exponent: scaled.exponent + e2 as i64,
        }
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    /// Nearest `f64`; underflows to zero and overflows to infinity.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent.clamp(-2200, 2200) as i32;
        libm::ldexp(self.mantissa, e)
    }

    pub fn ln(self) -> f64 {
        self.mantissa.ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    /// `self / other` as an ordinary float; `other` must be non-zero.
    pub fn ratio(self, other: ScaledReal) -> f64 {
        let e = (self.exponent - other.exponent).clamp(-2200, 2200) as i32;
        libm::ldexp(self.mantissa / other.mantissa, e)
    }
}

impl Mul<f64> for ScaledReal {
    type Output = ScaledReal;

    fn mul(self, rhs: f64) -> ScaledReal {
        let r = Self::from_f64(self.mantissa * rhs);
        if r.is_zero() {
            return r;
        }
        ScaledReal {
            mantissa: r.mantissa,
            exponent: r.exponent + self.exponent,
        }
    }
}

impl fmt::Display for ScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let log10 = self.ln() / std::f64::consts::LN_10;
        let e10 = log10.floor();
        write!(f, "{}e{}", 10f64.powf(log10 - e10), e10 as i64)
    }
}
