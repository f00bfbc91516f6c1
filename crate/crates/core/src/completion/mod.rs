//! The completion polynomial `P(s, t)`, the completed functions `H` and
//! `Ẑ`, and functional-equation residuals.
//!
//! `P` is fitted from the determinant expression
//!
//! ```text
//! log Z(s,t) = P(s) - 2(g-1)[log Γ(s+1,t+1) + log Γ(s,t+1)]
//!              - Σ_± log detΓ(s - 1/2 ± i r, t-1)
//! ```
//!
//! and checked against the shift equation `P(s,t+1) - P(s+1,t+1) = P(s,t)`.

mod polynomial;

pub use polynomial::{degree_bound, p_poly_from_shift, p_poly_lift, recursion_predictions, CompletionPolynomial};
pub use crate::spectral::lemfe_residual;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::binomial_zeta::{log_gamma2, log_multisine, zeta_t};
use crate::complex_core::{Complex, SeriesControl};
use crate::error::{Error, Result};
use crate::geodesic::{EigenSpectrum, LengthSpectrum};
use crate::products::{log_z2, TruncationPolicy};
use crate::spectral::{fhat_m, log_det_gamma_spec, log_det_sine_spec, tan_correction_deriv, Sign};

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn gamma_factor(s: Complex, t: Complex, genus: u32, ctrl: &SeriesControl) -> Result<Complex> {
    let c = 2.0 * (genus as f64 - 1.0);
    if c == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    Ok(c * (log_gamma2(s + 1.0, t + 1.0, ctrl)? + log_gamma2(s, t + 1.0, ctrl)?))
}

fn det_factor(s: Complex, t: Complex, eig: &EigenSpectrum, ctrl: &SeriesControl) -> Result<Complex> {
    if eig.is_empty() {
        return Ok(Complex::new(0.0, 0.0));
    }
    Ok(log_det_gamma_spec(s, t - 1.0, eig, Sign::Plus, ctrl)? + log_det_gamma_spec(s, t - 1.0, eig, Sign::Minus, ctrl)?)
}

/// `log H(s,t) = log Z(s,t) + 2(g-1)[log Γ(s+1,t+1) + log Γ(s,t+1)]` with
/// `Z` from the truncated product.
pub fn log_h(s: Complex, t: Complex, spec: &LengthSpectrum, genus: u32, pol: &TruncationPolicy, ctrl: &SeriesControl) -> Result<Complex> {
    Ok(log_z2(s, t, spec, pol)?.log_value + gamma_factor(s, t, genus, ctrl)?)
}

/// `(1/m!) Σ_j m_j fhat^{(m)}_{s,t}(r_j)`, the spectral side of
/// `(-1)^m ∂^{m+1} log H`.
pub fn log_h_spectral_deriv(s: Complex, t: Complex, m: u32, eig: &EigenSpectrum, ctrl: &SeriesControl) -> Result<Complex> {
    if m < 2 || (m as f64) < t.re + 1.0 {
        return Err(Error::domain(
            "log_H_spectral_deriv",
            t,
            format!("order {m} must be at least max(2, Re t + 1)"),
        ));
    }
    Ok(spectral_sum(s, t, m, eig, ctrl)? / factorial(m))
}

fn spectral_sum(s: Complex, t: Complex, m: u32, eig: &EigenSpectrum, ctrl: &SeriesControl) -> Result<Complex> {
    let mut acc = Complex::new(0.0, 0.0);
    for (r, mult) in eig.spectral_params() {
        acc += mult as f64 * fhat_m(s, t, r, m, ctrl)?;
    }
    Ok(acc)
}

fn tan_sum(n: i64, s: Complex, m: u32, eig: &EigenSpectrum) -> Result<Complex> {
    let mut acc = Complex::new(0.0, 0.0);
    for (r, mult) in eig.spectral_params() {
        acc += mult as f64 * tan_correction_deriv(n, s, r, m)?;
    }
    Ok(acc)
}

/// Residual of the derivative functional equation of `H(s, n)` built from
/// an eigenvalue list.
///
/// With `D(x) = (-1)^m Σ_j m_j fhat^{(m)}_{x,n}(r_j)` (that is
/// `∂^{m+1} log H(x, n)` up to `m!`), the residual for `n <= 1` is
/// `|(-1)^m D(n-s) - (-1)^n D(s)|`. For `n >= 2` the tangent corrections
/// `G^{(m)}` of the reflection lemma enter both sides. Holds term by term,
/// so any finite list gives rounding-level residuals. Needs `m >= n - 1`.
pub fn fe_deriv_residual(n: i64, s: Complex, m: u32, eig: &EigenSpectrum, ctrl: &SeriesControl) -> Result<f64> {
    if m == 0 || (m as i64) < n - 1 {
        return Err(Error::domain(
            "fe_deriv_residual",
            Complex::new(m as f64, 0.0),
            format!("order must be at least max(1, n - 1) = {}", (n - 1).max(1)),
        ));
    }
    if eig.is_empty() {
        return Ok(0.0);
    }
    let nn = Complex::new(n as f64, 0.0);
    let sm = parity(m as i64);
    let sn = parity(n);
    let reflected = nn - s;
    let d_ref = sm * spectral_sum(reflected, nn, m, eig, ctrl)?;
    let d_s = sm * spectral_sum(s, nn, m, eig, ctrl)?;
    let (lhs, rhs) = if n <= 1 {
        (sm * d_ref, sn * d_s)
    } else {
        (
            sm * (d_ref + sn * tan_sum(n, reflected, m, eig)?),
            sn * d_s + tan_sum(n, s, m, eig)?,
        )
    };
    Ok((lhs - rhs).norm())
}

/// The same residual for `n >= 2` with the corrections taken from the
/// determinant factors of `H̃(s,n) = H(s,n) detΓ(s-1/2-ir, n-1)
/// detΓ(n-s-1/2+ir, n-1)^{(-1)^n}` instead of the tangent terms. Uses
/// `∂^{m+1} log Γ(a, t) = -(-1)^m m! ζ_t(m+1, a)`.
pub fn fe_deriv_residual_det(n: i64, s: Complex, m: u32, eig: &EigenSpectrum, ctrl: &SeriesControl) -> Result<f64> {
    if n < 2 {
        return fe_deriv_residual(n, s, m, eig, ctrl);
    }
    if (m as i64) < n - 1 {
        return Err(Error::domain(
            "fe_deriv_residual_det",
            Complex::new(m as f64, 0.0),
            format!("order must be at least n - 1 = {}", n - 1),
        ));
    }
    let nn = Complex::new(n as f64, 0.0);
    let sm = parity(m as i64);
    let sn = parity(n);
    let z = Complex::new(m as f64 + 1.0, 0.0);
    let mf = factorial(m);
    let i = Complex::new(0.0, 1.0);
    let deriv = |x: Complex| -> Result<Complex> {
        let mut acc = Complex::new(0.0, 0.0);
        for (r, mult) in eig.spectral_params() {
            let mut v = sm * fhat_m(x, nn, r, m, ctrl)?;
            v -= sm * mf * zeta_t(z, x - 0.5 - i * r, nn - 1.0, ctrl)?;
            // chain rule on n - x gives (-1)^{m+1}
            v += sn * mf * zeta_t(z, nn - x - 0.5 + i * r, nn - 1.0, ctrl)?;
            acc += mult as f64 * v;
        }
        Ok(acc)
    };
    Ok((sm * deriv(nn - s)? - sn * deriv(s)?).norm())
}

/// `log Z(s,t)` from the determinant expression with a given `P`.
pub fn log_z_from_determinant(
    s: Complex,
    t: Complex,
    p: &CompletionPolynomial,
    eig: &EigenSpectrum,
    genus: u32,
    ctrl: &SeriesControl,
) -> Result<Complex> {
    Ok(p.eval(s) - gamma_factor(s, t, genus, ctrl)? - det_factor(s, t, eig, ctrl)?)
}

/// `log Z(s,t) + 2(g-1)[log Γ(s+1,t+1) + log Γ(s,t+1)] + Σ_± log detΓ(·, t-1)`
/// for a supplied `log Z`; equals `P(s, t)` when the data are paired.
pub fn determinant_residual_with(
    s: Complex,
    t: Complex,
    log_z: Complex,
    eig: &EigenSpectrum,
    genus: u32,
    ctrl: &SeriesControl,
) -> Result<Complex> {
    Ok(log_z + gamma_factor(s, t, genus, ctrl)? + det_factor(s, t, eig, ctrl)?)
}

/// [`determinant_residual_with`] using the truncated product for `log Z`.
pub fn determinant_residual(
    s: Complex,
    t: Complex,
    spec: &LengthSpectrum,
    eig: &EigenSpectrum,
    genus: u32,
    pol: &TruncationPolicy,
    ctrl: &SeriesControl,
) -> Result<Complex> {
    determinant_residual_with(s, t, log_z2(s, t, spec, pol)?.log_value, eig, genus, ctrl)
}

/// Result of fitting `P(·, t)` to determinant residuals on a real grid.
#[derive(Debug, Clone)]
pub struct CompletionFit {
    pub polynomial: CompletionPolynomial,
    /// Degree bound used by the fit.
    pub max_degree: Option<usize>,
    /// RMS of the real residual after subtracting the fitted polynomial.
    pub rms: f64,
    /// Largest `|Im|` of the residual, which should vanish for real data.
    pub max_imag: f64,
    pub samples: Vec<(f64, Complex)>,
}

/// Fits `P(·, t)` by least squares to `log_z`-based determinant residuals
/// at the real points `grid`.
pub fn fit_completion_with<F>(
    t: Complex,
    grid: &[f64],
    eig: &EigenSpectrum,
    genus: u32,
    ctrl: &SeriesControl,
    log_z: F,
) -> Result<CompletionFit>
where
    F: Fn(Complex) -> Result<Complex> + Sync,
{
    let samples = grid
        .par_iter()
        .map(|&x| {
            let s = Complex::new(x, 0.0);
            Ok((x, determinant_residual_with(s, t, log_z(s)?, eig, genus, ctrl)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_imag = samples.iter().map(|(_, v)| v.im.abs()).fold(0.0, f64::max);
    let max_degree = degree_bound(t);
    let Some(d) = max_degree else {
        let rms = rms(samples.iter().map(|(_, v)| v.re));
        return Ok(CompletionFit {
            polynomial: CompletionPolynomial::zero(t),
            max_degree,
            rms,
            max_imag,
            samples,
        });
    };
    if grid.len() <= d {
        return Err(Error::Invariant(format!(
            "fitting degree {d} needs more than {d} grid points, got {}",
            grid.len()
        )));
    }
    // centre and scale the abscissae for conditioning
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let c = 0.5 * (lo + hi);
    let h = (0.5 * (hi - lo)).max(1.0);
    let a = DMatrix::from_fn(grid.len(), d + 1, |i, j| ((grid[i] - c) / h).powi(j as i32));
    let b = DVector::from_iterator(grid.len(), samples.iter().map(|(_, v)| v.re));
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Invariant(format!("least-squares solve failed: {e}")))?;
    // expand Σ q_j ((s-c)/h)^j into powers of s
    let mut p = vec![0.0; d + 1];
    for (j, q) in coef.iter().enumerate() {
        let scale = q / h.powi(j as i32);
        for (l, pl) in p.iter_mut().enumerate().take(j + 1) {
            *pl += scale * crate::complex_core::binomial_real(j as u64, l as u64) * (-c).powi((j - l) as i32);
        }
    }
    let polynomial = CompletionPolynomial::new(t, p);
    let rms = rms(samples.iter().map(|(x, v)| v.re - polynomial.eval(Complex::new(*x, 0.0)).re));
    Ok(CompletionFit {
        polynomial,
        max_degree,
        rms,
        max_imag,
        samples,
    })
}

fn rms(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(a, n), v| (a + v * v, n + 1));
    if n == 0 {
        0.0
    } else {
        (sum / n as f64).sqrt()
    }
}

/// [`fit_completion_with`] using the truncated product for `log Z`.
pub fn fit_completion(
    t: Complex,
    grid: &[f64],
    spec: &LengthSpectrum,
    eig: &EigenSpectrum,
    genus: u32,
    pol: &TruncationPolicy,
    ctrl: &SeriesControl,
) -> Result<CompletionFit> {
    fit_completion_with(t, grid, eig, genus, ctrl, |s| Ok(log_z2(s, t, spec, pol)?.log_value))
}

/// `P(0, t)` estimated as `s → 0`.
#[derive(Debug, Clone)]
pub struct P0Estimate {
    /// Limit of the determinant residual (the bracket with `Γ(·,t+1)` and
    /// `detΓ(·,t-1)`), which is `P(ε)` by construction.
    pub consistent: f64,
    pub consistent_error: f64,
    /// Limit of the bracket read with `ζ_t` and `ξ^(±)` at `t` itself.
    pub literal: f64,
    pub literal_error: f64,
    pub warning: Option<String>,
}

const P0_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

// Richardson on f(ε), f(ε/2), f(ε/4) assuming f = a + bε + cε² + ...
fn richardson(f: [f64; 3]) -> (f64, f64) {
    let first = 2.0 * f[2] - f[1];
    let second = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
    (second, (second - first).abs())
}

/// Estimates `p_0` from the `s → 0` limit with `log Z` taken from the
/// determinant expression under `p`.
pub fn p0_from_limit(p: &CompletionPolynomial, eig: &EigenSpectrum, genus: u32, ctrl: &SeriesControl) -> Result<P0Estimate> {
    let t = p.t_label;
    let mut consistent = [0.0; 3];
    let mut literal = [0.0; 3];
    for (k, eps) in P0_STEPS.iter().enumerate() {
        let s = Complex::new(*eps, 0.0);
        let lz = log_z_from_determinant(s, t, p, eig, genus, ctrl)?;
        consistent[k] = determinant_residual_with(s, t, lz, eig, genus, ctrl)?.re;
        let c = 2.0 * (genus as f64 - 1.0);
        let mut lit = lz;
        if c != 0.0 {
            lit += c * log_gamma2(s, t, ctrl)?;
        }
        if !eig.is_empty() {
            lit += log_det_gamma_spec(s, t, eig, Sign::Plus, ctrl)? + log_det_gamma_spec(s, t, eig, Sign::Minus, ctrl)?;
        }
        literal[k] = lit.re;
    }
    let (consistent, consistent_error) = richardson(consistent);
    let (literal, literal_error) = richardson(literal);
    let unstable = |v: f64, e: f64| !v.is_finite() || !e.is_finite() || e > 1e-6 * v.abs().max(1.0);
    let mut notes = Vec::new();
    if unstable(consistent, consistent_error) {
        notes.push(format!("consistent bracket unstable (spread {consistent_error:.3e})"));
    }
    if unstable(literal, literal_error) {
        notes.push(format!("literal bracket unstable (spread {literal_error:.3e})"));
    }
    Ok(P0Estimate {
        consistent,
        consistent_error,
        literal,
        literal_error,
        warning: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// Where `log Z(s, n)` comes from when assembling `Ẑ`.
#[derive(Debug, Clone, Copy)]
pub enum ZSource<'a> {
    /// Truncated Euler product; needs `Re s >= 1`.
    Product(&'a LengthSpectrum, &'a TruncationPolicy),
    /// Determinant expression under the completion polynomial.
    Determinant,
}

/// `log Ẑ(s, n) = log Z(s,n) - 2(g-1) log S(s, n+1) + P(s)`, and for
/// `n >= 2` additionally `- log detS(s - 1/2 - i r, n-1)`.
pub fn log_z_hat(
    s: Complex,
    n: i64,
    source: ZSource<'_>,
    p: &CompletionPolynomial,
    eig: &EigenSpectrum,
    genus: u32,
    ctrl: &SeriesControl,
) -> Result<Complex> {
    let nn = Complex::new(n as f64, 0.0);
    let mut v = match source {
        ZSource::Product(spec, pol) => log_z2(s, nn, spec, pol)?.log_value,
        ZSource::Determinant => log_z_from_determinant(s, nn, p, eig, genus, ctrl)?,
    };
    let c = 2.0 * (genus as f64 - 1.0);
    if c != 0.0 {
        v -= c * log_multisine(s, n + 1, ctrl)?;
    }
    v += p.eval(s);
    if n >= 2 && !eig.is_empty() {
        v -= log_det_sine_spec(s, n - 1, eig, Sign::Minus, ctrl)?;
    }
    Ok(v)
}

/// One grid point of the `Ẑ` reflection check.
#[derive(Debug, Clone, Copy)]
pub struct ReflectionPoint {
    pub s: Complex,
    /// `log Ẑ(n-s) - (-1)^{n-1} log Ẑ(s)` with the imaginary part reduced
    /// to `(-π, π]`.
    pub difference: Complex,
    pub residual: f64,
}

/// `Ẑ(n-s, n) = Ẑ(s, n)^{(-1)^{n-1}}` residuals on `grid`. Both sides use
/// the determinant expression under `p`. Reported only: the identity needs
/// paired surface data.
pub fn z_hat_reflection_report(
    n: i64,
    grid: &[Complex],
    p: &CompletionPolynomial,
    eig: &EigenSpectrum,
    genus: u32,
    ctrl: &SeriesControl,
) -> Result<Vec<ReflectionPoint>> {
    let nn = Complex::new(n as f64, 0.0);
    let sign = parity(n - 1);
    grid.par_iter()
        .map(|&s| {
            let a = log_z_hat(nn - s, n, ZSource::Determinant, p, eig, genus, ctrl)?;
            let b = log_z_hat(s, n, ZSource::Determinant, p, eig, genus, ctrl)?;
            let mut d = a - sign * b;
            let two_pi = 2.0 * std::f64::consts::PI;
            d.im -= two_pi * (d.im / two_pi).round();
            Ok(ReflectionPoint {
                s,
                difference: d,
                residual: d.norm(),
            })
        })
        .collect()
}
