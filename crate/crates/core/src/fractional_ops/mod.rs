//! The bi-ordinal Hilfer derivative
//!
//! ```text
//! D^{(α,β)μ} = I^{μ(i−α)} (d/dy)^i I^{(1−μ)(i−β)}
//! ```
//!
//! in two independent realizations: closed form on power functions
//! ([`hilfer_monomial`]) and numerically on uniformly sampled functions
//! ([`hilfer_numeric`]), together with the Riemann–Liouville integral `I^ν`.

mod grid;
mod hilfer;
mod monomial;

pub use grid::{derivative, rl_integral_numeric, SampledFunction};
pub use hilfer::{hilfer_numeric, hilfer_numeric_split, SplitFunction};
pub use monomial::{
    falling_product, hilfer_monomial, rl_integral_monomial, OrderTriple, PowerTerm,
};
