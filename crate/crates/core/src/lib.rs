//! Construction, evaluation and independent verification of the general
//! solution of the degenerate fractional equation
//!
//! ```text
//! D^{(α,β)μ} u(y) = λ y^m u(y),   y > 0,
//! ```
//!
//! where `D^{(α,β)μ} = I^{μ(i−α)} (d/dy)^i I^{(1−μ)(i−β)}` is the bi-ordinal
//! Hilfer derivative. Solutions are generalized power series that can be
//! written through the Kilbas–Saigo function `E_{α,m,l}`.
//!
//! Module map:
//!
//! - [`special_functions`]: log-Gamma, Gamma ratios, Kilbas–Saigo and
//!   Mittag-Leffler series.
//! - [`fractional_ops`]: the operator on power functions (closed form) and on
//!   sampled functions (product-trapezoidal quadrature + finite differences).
//! - [`solver`]: fundamental solutions `u_s` and the Cauchy-type problem.
//! - [`verification`]: coefficient identities, numeric residuals and
//!   initial-condition limits.
//! - [`cli`]: the command-line front end.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod fractional_ops;
pub mod solver;
pub mod special_functions;
pub mod verification;

pub use error::{Error, Result};
pub use num_complex::Complex64;
