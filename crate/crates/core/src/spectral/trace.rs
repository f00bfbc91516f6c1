//! The trace formula tested with `f_{s,t}^{(m)}`:
//!
//! `(-1)^m/m! ∂_s^{m+1} log Z(s,t) = Σ_j m_j fhat^{(m)}_{s,t}(r_j)/m! + I(s,t,m)`,
//!
//! where the identity term is
//! `I = 2(g-1) Σ_k {binom(t+k-1, k-1) + binom(t+k, k)} (s+k)^{-(m+1)}`.

use crate::binomial_zeta::zeta_t_series_detailed;
use crate::complex_core::{quad_realline, Complex, SeriesControl};
use crate::error::{Error, Result};
use crate::geodesic::{EigenSpectrum, LengthSpectrum};
use crate::products::{logderiv_z2, TruncationPolicy};

use super::{fhat_m_beta, fhat_m_detailed};

const BETA_FORM_FROM: f64 = 16.0;

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

fn check_order(function: &'static str, t: Complex, m: u32) -> Result<()> {
    if m < 2 || (m as f64) < t.re + 1.0 {
        return Err(Error::domain(function, t, format!("order {m} must be at least max(2, Re t + 1)")));
    }
    Ok(())
}

/// The identity term as a series: `2(g-1) [ζ_{t+1}(m+1, s+1) + ζ_{t+1}(m+1, s)]`.
pub fn identity_term_series(s: Complex, t: Complex, m: u32, genus: u32, ctrl: &SeriesControl) -> Result<Complex> {
    check_order("identity_term_series", t, m)?;
    let factor = 2.0 * (genus as f64 - 1.0);
    if factor == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let z = Complex::new(m as f64 + 1.0, 0.0);
    let shifted = zeta_t_series_detailed(z, s + 1.0, t + 1.0, ctrl)?;
    let plain = zeta_t_series_detailed(z, s, t + 1.0, ctrl)?;
    Ok(factor * (shifted.value + plain.value))
}

/// The identity term from the trace formula's integral,
/// `-(g-1)/m! ∫ fhat^{(m)}_{s,t}(r) r tanh(πr) dr`, with the quadrature
/// error estimate.
pub fn identity_term_quad(s: Complex, t: Complex, m: u32, genus: u32, tol: f64, ctrl: &SeriesControl) -> Result<(Complex, f64)> {
    check_order("identity_term_quad", t, m)?;
    let factor = -(genus as f64 - 1.0) / factorial(m);
    if factor == 0.0 {
        return Ok((Complex::new(0.0, 0.0), 0.0));
    }
    let failure = std::cell::RefCell::new(None);
    // the series form needs O(|r|) terms, so large |r| uses the Beta form
    let integrand = |r: f64| -> Complex {
        let y = Complex::new(r, 0.0);
        let value = if r.abs() <= BETA_FORM_FROM {
            fhat_m_detailed(s, t, y, m, ctrl).map(|v| v.value)
        } else {
            fhat_m_beta(s, t, y, m)
        };
        match value {
            Ok(v) => v * (r * (std::f64::consts::PI * r).tanh()),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex::new(0.0, 0.0)
            }
        }
    };
    let q = quad_realline(integrand, -(m as f64), tol / factor.abs())?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok((factor * q.value, factor.abs() * q.abs_error))
}

/// Both sides of the trace formula at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceReport {
    /// `(-1)^m/m! ∂_s^{m+1} log Z(s, t)` from the length spectrum.
    pub geometric: Complex,
    /// `Σ_j m_j fhat^{(m)}(r_j)/m!` from the eigenvalues.
    pub spectral: Complex,
    pub identity: Complex,
    /// `|geometric - spectral - identity|`.
    pub residual: f64,
    pub geometric_tail: f64,
    pub spectral_tail: f64,
}

/// Evaluates both sides of the trace formula. With genuinely paired data
/// (all classes and all eigenvalues of one surface) the residual is the
/// truncation error; with synthetic or unrelated inputs it simply reports
/// the mismatch.
#[allow(clippy::too_many_arguments)]
pub fn trace_residual(
    s: Complex,
    t: Complex,
    m: u32,
    spec: &LengthSpectrum,
    eig: &EigenSpectrum,
    genus: u32,
    pol: &TruncationPolicy,
    ctrl: &SeriesControl,
) -> Result<TraceReport> {
    check_order("trace_residual", t, m)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let fm = factorial(m);
    let geo = logderiv_z2(s, t, spec, pol, m)?;
    let geometric = geo.value * (sign / fm);
    let mut spectral = Complex::new(0.0, 0.0);
    let mut spectral_tail = 0.0;
    for (r, mult) in eig.spectral_params() {
        let v = fhat_m_detailed(s, t, r, m, ctrl)?;
        spectral += v.value * (mult as f64 / fm);
        spectral_tail += v.tail_bound * mult as f64 / fm;
    }
    let identity = identity_term_series(s, t, m, genus, ctrl)?;
    Ok(TraceReport {
        geometric,
        spectral,
        identity,
        residual: (geometric - spectral - identity).norm(),
        geometric_tail: geo.tail_bound / fm,
        spectral_tail,
    })
}
