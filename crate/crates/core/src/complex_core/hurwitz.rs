//! Hurwitz zeta `ζ(z, a) = Σ_{k≥0} (k + a)^{-z}` continued to all `z ≠ 1`
//! by Euler–Maclaurin summation:
//!
//! ```text
//! ζ(z,a) = Σ_{k<K} (a+k)^{-z} + N^{1-z}/(z-1) + N^{-z}/2
//!          + Σ_{j=1}^{p} B_{2j}/(2j)! (z)_{2j-1} N^{-z-2j+1},     N = a + K
//! ```
//!
//! The `z`-derivative is differentiated term by term inside the same
//! representation.
//!
//! For `Re z >= 1/2` the direct-sum length and correction order come from
//! [`SeriesControl`]. For `Re z < 1/2` the direct sum has to stay short: its
//! terms grow like `|N|^{-Re z}` and cancel down to a value that may be many
//! orders smaller, so `K` is picked by minimising an estimate of rounding
//! plus truncation error, with up to twelve correction terms. That choice
//! still loses digits once `Re z` is well below zero and `a` is small, so
//! for real `a` in `(0, 3]` and `Re z <= -4` the value comes instead from
//! Hurwitz's Fourier series
//! `ζ(z,a) = Γ(1-z)/(2π)^{1-z} Σ_n [e^{-iπ(1-z)/2} e^{2πina} + e^{iπ(1-z)/2} e^{-2πina}] n^{z-1}`.

use super::{is_nonpositive_integer, log_gamma, Complex, SeriesControl, BERNOULLI_EVEN};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

// B_{2j} / (2j)!
fn bernoulli_over_factorial(j: usize) -> f64 {
    let mut f = 1.0;
    for i in 1..=(2 * j) {
        f *= i as f64;
    }
    BERNOULLI_EVEN[j - 1] / f
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    direct_terms: usize,
    order: usize,
}

fn first_shift(a: Complex) -> usize {
    if a.re >= 1.0 {
        0
    } else {
        (1.0 - a.re).ceil() as usize
    }
}

fn plan(z: Complex, a: Complex, ctrl: &SeriesControl, want_deriv: bool) -> Plan {
    let k0 = first_shift(a);
    if z.re >= 0.5 {
        let order = ctrl.euler_maclaurin_order;
        let base = if a.re >= 0.0 { ctrl.max_terms } else { k0 + ctrl.max_terms };
        // keep |N| well beyond the growth of the Pochhammer factors
        let need = ((z.norm() + 2.0 * order as f64) / std::f64::consts::PI).ceil() as usize;
        let mut k = base.max(k0);
        while (a + k as f64).norm() < need as f64 {
            k += 1;
        }
        return Plan {
            direct_terms: k,
            order,
        };
    }

    let max_order = SeriesControl::MAX_EM_ORDER;
    let zm1 = (z - 1.0).norm();
    let mut best: Option<(f64, Plan)> = None;
    for k in k0..k0 + 200 {
        let n = a + k as f64;
        let ln_n = n.ln();
        let head = ((1.0 - z) * ln_n).re.exp() / zm1 + (-z * ln_n).re.exp();
        let scale = if want_deriv { head * (1.0 + ln_n.norm()) } else { head };
        let rounding = 4.0 * EPS * (k as f64 + 4.0) * scale;

        // magnitudes of the correction terms (and their z-derivatives)
        let mut poch = z;
        let mut dpoch = Complex::new(1.0, 0.0);
        let mut smallest = f64::INFINITY;
        let mut order = max_order;
        let mut prev = f64::INFINITY;
        for j in 1..=max_order + 1 {
            let pw = ((-z - (2 * j - 1) as f64) * ln_n).exp();
            let mut mag = poch.norm();
            if want_deriv {
                mag += (dpoch - poch * ln_n).norm();
            }
            let term = bernoulli_over_factorial(j).abs() * mag * pw.norm();
            if term > prev && j > 1 {
                order = j - 1;
                smallest = smallest.min(prev);
                break;
            }
            if j == max_order + 1 {
                smallest = term;
                break;
            }
            smallest = smallest.min(term);
            prev = term;
            // (z)_{2j+1} from (z)_{2j-1}
            for i in [2 * j - 1, 2 * j] {
                let f = z + i as f64;
                dpoch = dpoch * f + poch;
                poch *= f;
            }
        }
        let truncation = if order == max_order { smallest } else { prev };
        let total = rounding + truncation;
        let cand = Plan {
            direct_terms: k,
            order: order.max(1),
        };
        match best {
            Some((e, _)) if e <= total => {}
            _ => best = Some((total, cand)),
        }
        if truncation < 1e-3 * rounding {
            break;
        }
    }
    best.map(|(_, p)| p).unwrap_or(Plan {
        direct_terms: k0 + ctrl.max_terms,
        order: max_order,
    })
}

fn check_args(function: &'static str, z: Complex, a: Complex) -> Result<()> {
    if is_nonpositive_integer(a, 0.0) {
        return Err(Error::domain(function, a, "shift parameter is a nonpositive integer"));
    }
    if z == Complex::new(1.0, 0.0) {
        return Err(Error::pole(function, z));
    }
    if !(z.re.is_finite() && z.im.is_finite() && a.re.is_finite() && a.im.is_finite()) {
        return Err(Error::domain(function, z, "non-finite argument"));
    }
    Ok(())
}

/// Returns `(ζ(z,a), ∂_z ζ(z,a))`; the derivative is zero when not requested.
fn euler_maclaurin(z: Complex, a: Complex, ctrl: &SeriesControl, want_deriv: bool) -> (Complex, Complex) {
    let Plan { direct_terms, order } = plan(z, a, ctrl, want_deriv);
    let mut val = Complex::new(0.0, 0.0);
    let mut der = Complex::new(0.0, 0.0);
    for k in 0..direct_terms {
        let w = a + k as f64;
        let lw = w.ln();
        let term = (-z * lw).exp();
        val += term;
        if want_deriv {
            der -= lw * term;
        }
    }
    let n = a + direct_terms as f64;
    let ln_n = n.ln();
    let n_mz = (-z * ln_n).exp();
    let zm1 = z - 1.0;
    let integral = n * n_mz / zm1;
    val += integral + 0.5 * n_mz;
    if want_deriv {
        der += -ln_n * integral - integral / zm1 - 0.5 * ln_n * n_mz;
    }

    let mut poch = z;
    let mut dpoch = Complex::new(1.0, 0.0);
    let mut pw = n_mz / n;
    let inv_n2 = (n * n).inv();
    for j in 1..=order {
        let c = bernoulli_over_factorial(j);
        val += c * poch * pw;
        if want_deriv {
            der += c * (dpoch - poch * ln_n) * pw;
        }
        for i in [2 * j - 1, 2 * j] {
            let f = z + i as f64;
            dpoch = dpoch * f + poch;
            poch *= f;
        }
        pw *= inv_n2;
    }
    (val, der)
}

fn fourier_applies(z: Complex, a: Complex) -> bool {
    a.im == 0.0 && a.re > 0.0 && a.re <= 3.0 && z.re <= -4.0 && z.im.abs() <= 10.0
}

// Hurwitz's formula for 0 < a <= 1, then the shift recurrence
fn fourier(z: Complex, a: f64) -> Result<Complex> {
    let shift = a.ceil() as usize - 1;
    let a0 = a - shift as f64;
    let s1 = 1.0 - z;
    let two_pi = std::f64::consts::TAU;
    let pref = (log_gamma(s1)? - s1 * two_pi.ln()).exp();
    // tail Σ_{n>N} n^{-Re s1} ≈ N^{1-Re s1}/(Re s1 - 1) below 1e-17
    let n_max = (((s1.re - 1.0) * 1e-17).ln() / (1.0 - s1.re)).exp().ceil() as usize + 1;
    let mut plus = Complex::new(0.0, 0.0);
    let mut minus = Complex::new(0.0, 0.0);
    for n in 1..=n_max {
        let p = (-s1 * (n as f64).ln()).exp();
        // reduce n·a0 mod 1 before taking the angle
        let phase = two_pi * (n as f64 * a0).fract();
        let e = Complex::new(phase.cos(), phase.sin());
        plus += e * p;
        minus += e.conj() * p;
    }
    let rot = (Complex::new(0.0, -std::f64::consts::FRAC_PI_2) * s1).exp();
    let mut val = pref * (rot * plus + rot.inv() * minus);
    for j in 0..shift {
        val -= (-z * (a0 + j as f64).ln()).exp();
    }
    Ok(val)
}

/// Hurwitz zeta with default series controls.
pub fn hurwitz_zeta(z: Complex, a: Complex) -> Result<Complex> {
    hurwitz_zeta_with(z, a, &SeriesControl::default())
}

pub fn hurwitz_zeta_with(z: Complex, a: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    check_args("hurwitz_zeta", z, a)?;
    if fourier_applies(z, a) {
        return fourier(z, a.re);
    }
    Ok(euler_maclaurin(z, a, ctrl, false).0)
}

/// `∂/∂z ζ(z, a)` at `z0`, differentiated analytically inside the
/// Euler–Maclaurin representation.
pub fn hurwitz_zeta_zderiv(z0: Complex, a: Complex) -> Result<Complex> {
    hurwitz_zeta_zderiv_with(z0, a, &SeriesControl::default())
}

pub fn hurwitz_zeta_zderiv_with(z0: Complex, a: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    check_args("hurwitz_zeta_zderiv", z0, a)?;
    Ok(euler_maclaurin(z0, a, ctrl, true).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::log_gamma;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn basel() {
        let v = hurwitz_zeta(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(rel(v, c(PI * PI / 6.0, 0.0)) < 1e-14);
    }

    #[test]
    fn negative_integer_values() {
        // ζ(-1) = -1/12, ζ(0, a) = 1/2 - a
        let v = hurwitz_zeta(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v - c(-1.0 / 12.0, 0.0)).norm() < 1e-15);
        let a = c(0.3, 0.8);
        let v = hurwitz_zeta(c(0.0, 0.0), a).unwrap();
        assert!((v - (0.5 - a)).norm() < 1e-14);
        // ζ(-3) = 1/120
        let v = hurwitz_zeta(c(-3.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v - c(1.0 / 120.0, 0.0)).norm() < 1e-15, "{v}");
    }

    #[test]
    fn lerch_formula() {
        // ζ'(0, a) = log Γ(a) - log √(2π)
        for a in [c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), c(1.3, 2.1), c(-0.4, 0.6)] {
            let d = hurwitz_zeta_zderiv(c(0.0, 0.0), a).unwrap();
            let expect = log_gamma(a).unwrap() - 0.5 * (2.0 * PI).ln();
            assert!((d - expect).norm() < 1e-12, "a = {a}: {d} vs {expect}");
        }
    }

    #[test]
    fn negative_integer_bernoulli_values() {
        // ζ(-5, a) = -B_6(a)/6, B_6(x) = x^6 - 3x^5 + 5x^4/2 - x^2/2 + 1/42
        for a in [0.1f64, 0.5, 1.0, 1.7, 2.9] {
            let b6 = a.powi(6) - 3.0 * a.powi(5) + 2.5 * a.powi(4) - 0.5 * a * a + 1.0 / 42.0;
            let v = hurwitz_zeta(c(-5.0, 0.0), c(a, 0.0)).unwrap();
            assert!((v.re + b6 / 6.0).abs() < 1e-13 * (b6 / 6.0).abs().max(1e-3), "a={a}: {v}");
        }
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(hurwitz_zeta(c(1.0, 0.0), c(0.5, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), c(-2.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), c(0.0, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn recurrence_in_shift() {
        for (z, a) in [(c(2.5, 0.3), c(0.7, 0.0)), (c(-2.2, 1.0), c(1.4, -0.5)), (c(0.3, -4.0), c(2.0, 3.0))] {
            let lhs = hurwitz_zeta(z, a).unwrap() - hurwitz_zeta(z, a + 1.0).unwrap();
            let rhs = (-z * a.ln()).exp();
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "z={z} a={a}");
        }
    }
}
