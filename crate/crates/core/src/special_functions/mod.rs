//! Scalar special functions: log-Gamma, Gamma ratios, the Kilbas–Saigo
//! function and a Mittag-Leffler series used as an independent oracle.

mod gamma;
mod kilbas_saigo;
mod mittag_leffler;
mod scaled;
mod series;

pub use gamma::{gamma_ratio, ln_gamma_ratio, log_gamma};
pub use kilbas_saigo::{kilbas_saigo, KilbasSaigo, KilbasSaigoParams};
pub use mittag_leffler::mittag_leffler;
pub use scaled::ScaledReal;
pub use series::{sum_series, SeriesEvalReport, DEFAULT_N_MAX, DEFAULT_TOL};
