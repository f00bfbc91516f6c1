//! The two-variable gamma function `Γ(s, t) = exp(∂_z ζ_t(z, s)|_{z=0})` and
//! the multiple sine `S(s, n) = Γ(s, n)^{-1} Γ(n - s, n)^{(-1)^n}`.

use crate::complex_core::{Complex, SeriesControl};
use crate::error::Result;

use super::{integer_t, zeta_t_int_zderiv, ContinuationRep};

/// `log Γ(s, t)`.
///
/// Integer `t` goes through the exact Hurwitz reduction (any `s` off the
/// nonpositive integers); other `t` through the split-integral
/// continuation, which needs `Re s > 0`.
pub fn log_gamma2(s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    match integer_t(t) {
        Some(n) => zeta_t_int_zderiv(Complex::new(0.0, 0.0), s, n, ctrl),
        None => ContinuationRep::new(s, t, ctrl)?.zeta_zderiv_at_zero(),
    }
}

/// `log Γ(s, t)` from the split-integral representation only, also for
/// integer `t` (used to cross-check the Hurwitz path).
pub fn log_gamma2_continued(s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    ContinuationRep::new(s, t, ctrl)?.zeta_zderiv_at_zero()
}

pub fn gamma2(s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    Ok(log_gamma2(s, t, ctrl)?.exp())
}

/// `log S(s, n) = -log Γ(s, n) + (-1)^n log Γ(n - s, n)`.
pub fn log_multisine(s: Complex, n: i64, ctrl: &SeriesControl) -> Result<Complex> {
    let nn = Complex::new(n as f64, 0.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-log_gamma2(s, nn, ctrl)? + sign * log_gamma2(nn - s, nn, ctrl)?)
}

pub fn multisine(s: Complex, n: i64, ctrl: &SeriesControl) -> Result<Complex> {
    Ok(log_multisine(s, n, ctrl)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::log_gamma;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn t_zero_is_reciprocal() {
        let v = log_gamma2(c(2.0, 0.0), c(0.0, 0.0), &ctrl()).unwrap();
        assert!((v + 2f64.ln()).norm() < 1e-15);
        assert!((gamma2(c(2.0, 0.0), c(0.0, 0.0), &ctrl()).unwrap() - 0.5).norm() < 1e-15);
    }

    #[test]
    fn t_one_is_lerch() {
        let half_ln_2pi = 0.5 * (2.0 * PI).ln();
        let v = log_gamma2(c(1.0, 0.0), c(1.0, 0.0), &ctrl()).unwrap();
        assert!((v + half_ln_2pi).norm() < 1e-13);
        let v = log_gamma2(c(0.5, 0.0), c(1.0, 0.0), &ctrl()).unwrap();
        assert!((v - (0.5 * PI.ln() - half_ln_2pi)).norm() < 1e-13);
        let s = c(2.3, -1.1);
        let v = log_gamma2(s, c(1.0, 0.0), &ctrl()).unwrap();
        assert!((v.exp() - (log_gamma(s).unwrap() - half_ln_2pi).exp()).norm() < 1e-12);
    }

    #[test]
    fn continued_path_matches_hurwitz_path() {
        for (s, n) in [(c(1.3, 0.0), 0), (c(0.7, 0.4), 1), (c(2.2, -0.5), 2), (c(1.1, 0.0), 3), (c(0.9, 0.3), -2)] {
            let t = c(n as f64, 0.0);
            let a = log_gamma2(s, t, &ctrl()).unwrap();
            let b = log_gamma2_continued(s, t, &ctrl()).unwrap();
            assert!((a.exp() - b.exp()).norm() < 1e-9 * a.exp().norm(), "s={s} n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn shift_relation() {
        // Γ(s, t+1) / Γ(s+1, t+1) = Γ(s, t)
        let (s, t) = (c(1.3, 0.0), c(0.7, 0.0));
        let lhs = log_gamma2(s, t + 1.0, &ctrl()).unwrap() - log_gamma2(s + 1.0, t + 1.0, &ctrl()).unwrap();
        let rhs = log_gamma2(s, t, &ctrl()).unwrap();
        assert!((lhs.exp() - rhs.exp()).norm() < 1e-9 * rhs.exp().norm(), "{lhs} vs {rhs}");
    }

    #[test]
    fn multisine_anchors() {
        assert!((multisine(c(0.5, 0.0), 1, &ctrl()).unwrap() - 2.0).norm() < 1e-12);
        assert!((multisine(c(0.25, 0.0), 1, &ctrl()).unwrap() - 2f64.sqrt()).norm() < 1e-12);
        assert!((multisine(c(0.77, 0.0), 0, &ctrl()).unwrap() + 1.0).norm() < 1e-14);
        let s = c(0.3, 0.6);
        let v = multisine(s, 1, &ctrl()).unwrap() / (2.0 * (PI * s).sin());
        assert!((v - 1.0).norm() < 1e-11);
    }
}
