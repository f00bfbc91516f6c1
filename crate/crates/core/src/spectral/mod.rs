//! Spectral side: spectral parameters from eigenvalues, the trace-formula
//! test functions and their Fourier transforms, finite-spectrum zeta sums
//! and regularized determinants, and the trace-formula residual.

mod determinant;
mod fourier;
mod trace;

pub use determinant::{
    log_det_gamma_spec, log_det_laplacian, log_det_sine_spec, shift_relation_report, xi_pm, ShiftReport, Sign,
};
pub use fourier::{fhat, fhat_m, fhat_m_beta, fhat_m_detailed, fhat_reg, lemfe_residual, tan_correction_deriv};
pub use trace::{identity_term_quad, identity_term_series, trace_residual, TraceReport};

use crate::complex_core::Complex;
use crate::error::{Error, Result};

/// `r` with `1/4 + r² = λ`: real and nonnegative for `λ >= 1/4`, and
/// `i·sqrt(1/4 - λ)` below, so `λ = 0` gives `r = i/2`.
pub fn r_from_lambda(lambda: f64) -> Result<Complex> {
    if !(lambda >= 0.0) {
        return Err(Error::domain("r_from_lambda", lambda, "eigenvalue must be nonnegative"));
    }
    Ok(r_from_lambda_unchecked(lambda))
}

pub(crate) fn r_from_lambda_unchecked(lambda: f64) -> Complex {
    let d = lambda - 0.25;
    if d >= 0.0 {
        Complex::new(d.sqrt(), 0.0)
    } else {
        Complex::new(0.0, (-d).sqrt())
    }
}
