//! The binomial Hurwitz zeta function
//! `ζ_t(z, s) = Σ_{k≥0} binom(t+k-1, k) (k+s)^{-z}`, its continuation in `z`,
//! the two-variable gamma function built from `∂_z ζ_t` at `z = 0`, and the
//! multiple sine.
//!
//! Integer `t` is recognised within [`INTEGER_T_TOL`] and routed through
//! exact Hurwitz-zeta reductions; other `t` through the split-integral
//! continuation, which needs `Re s > 0`.

mod continuation;
mod gamma2;
mod integer;
mod series;

pub use continuation::{zeta_t_cont, ContinuationPole, ContinuationRep};
pub use gamma2::{gamma2, log_gamma2, log_gamma2_continued, log_multisine, multisine};
pub use integer::{zeta_t_int, zeta_t_int_poles, zeta_t_int_zderiv};
pub use series::{zeta_t_series, zeta_t_series_detailed, SeriesValue};

use crate::complex_core::{as_integer, Complex, SeriesControl};
use crate::error::Result;

/// Distance below which `t` is treated as an integer.
pub const INTEGER_T_TOL: f64 = 1e-12;

pub(crate) fn integer_t(t: Complex) -> Option<i64> {
    as_integer(t, INTEGER_T_TOL)
}

/// `ζ_t(z, s)` by the best available path.
pub fn zeta_t(z: Complex, s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    match integer_t(t) {
        Some(n) => zeta_t_int(z, s, n, ctrl),
        None => zeta_t_cont(z, s, t, ctrl),
    }
}

/// `∂_z ζ_t(z, s)` at `z = 0`, i.e. `log Γ(s, t)`.
pub fn zeta_t_zderiv_at_zero(s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    log_gamma2(s, t, ctrl)
}
