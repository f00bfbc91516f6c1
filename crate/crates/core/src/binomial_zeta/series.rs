//! Direct summation of `ζ_t(z, s) = Σ_k binom(t+k-1, k) (k+s)^{-z}` in its
//! half-plane of convergence `Re z > Re t`.
//!
//! The tail `k >= K` is summed from the asymptotic expansion of the summand,
//! `binom(t+k-1,k) (k+s)^{-z} ~ Σ_j d_j k^{t-1-z-j} / Γ(t)`, each power being
//! a Hurwitz zeta value `ζ(j - α, K)`.

use crate::complex_core::{gen_binom, hurwitz_zeta, log_gamma, Complex, SeriesControl, BERNOULLI_EVEN};
use crate::error::{Error, Result};

use super::integer_t;

// order of the asymptotic tail expansion
const TAIL_ORDER: usize = 12;

/// Value of a truncated series together with its truncation data.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex,
    pub tail_bound: f64,
    pub terms: usize,
}

type Series = Vec<Complex>;

fn zeros(n: usize) -> Series {
    vec![Complex::new(0.0, 0.0); n]
}

fn exp_series(a: &Series) -> Series {
    // a[0] is handled as a scalar factor
    let n = a.len();
    let mut out = zeros(n);
    out[0] = a[0].exp();
    for k in 1..n {
        let mut acc = Complex::new(0.0, 0.0);
        for i in 1..=k {
            acc += a[i] * out[k - i] * i as f64;
        }
        out[k] = acc / k as f64;
    }
    out
}

// log(1 + a w)
fn ln_linear(a: Complex, n: usize) -> Series {
    let mut out = zeros(n);
    let mut pw = Complex::new(1.0, 0.0);
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        pw *= a;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        *o = pw * (sign / k as f64);
    }
    out
}

// (1 + a w)^p
fn pow_linear(a: Complex, p: f64, n: usize) -> Series {
    let l = ln_linear(a, n);
    exp_series(&l.iter().map(|c| c * p).collect())
}

/// Coefficients `d_j` with `Γ(k+t)/Γ(k+1) · (1 + s/k)^{-z} = k^{t-1} Σ d_j k^{-j}`.
fn tail_coefficients(z: Complex, s: Complex, t: Complex, order: usize) -> Series {
    let n = order + 2;
    let one = Complex::new(1.0, 0.0);
    let lt = ln_linear(t, n);
    let l1 = ln_linear(one, n);
    // (1 + (t-1/2) w) L_t(w) - (1 + w/2) L_1(w)
    let mut a = zeros(n);
    for k in 0..n {
        a[k] = lt[k] - l1[k];
        if k > 0 {
            a[k] += (t - 0.5) * lt[k - 1] - 0.5 * l1[k - 1];
        }
    }
    let mut s_series = a[1..].to_vec();
    s_series[0] -= t - 1.0;
    let m = n - 1;
    for j in 1..=(m / 2) {
        let c = BERNOULLI_EVEN[j - 1] / ((2 * j) as f64 * (2 * j - 1) as f64);
        let p = 1.0 - (2 * j) as f64;
        let diff: Series = pow_linear(t, p, m)
            .iter()
            .zip(pow_linear(one, p, m))
            .map(|(x, y)| x - y)
            .collect();
        for (k, d) in diff.iter().enumerate().take(m + 1 - 2 * j) {
            s_series[k + 2 * j - 1] += c * d;
        }
    }
    let ls = ln_linear(s, m);
    for k in 0..m {
        s_series[k] -= z * ls[k];
    }
    let mut d = exp_series(&s_series);
    d.truncate(order + 1);
    d
}

/// `ζ_t(z, s)` by direct summation with an asymptotic tail.
pub fn zeta_t_series(z: Complex, s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    zeta_t_series_detailed(z, s, t, ctrl).map(|v| v.value)
}

pub fn zeta_t_series_detailed(z: Complex, s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<SeriesValue> {
    ctrl.validate()?;
    if crate::complex_core::is_nonpositive_integer(s, 0.0) {
        return Err(Error::domain("zeta_t_series", s, "s is a nonpositive integer"));
    }
    // a nonpositive integer t gives a finite sum
    if let Some(n) = integer_t(t) {
        if n <= 0 {
            let mut value = Complex::new(0.0, 0.0);
            for k in 0..=(-n) as usize {
                value += gen_binom(t, k) * (-z * (s + k as f64).ln()).exp();
            }
            return Ok(SeriesValue {
                value,
                tail_bound: 0.0,
                terms: (1 - n) as usize,
            });
        }
    }
    if !(z.re > t.re) {
        return Err(Error::domain(
            "zeta_t_series",
            z,
            format!("series needs Re z > Re t = {}", t.re),
        ));
    }
    let alpha = t - 1.0 - z;
    let d = tail_coefficients(z, s, t, TAIL_ORDER);
    let inv_gamma_t = (-log_gamma(t)?).exp();
    let scale_hint = (t.norm() + s.norm() + z.norm()).max(1.0);
    let mut k_cut = ctrl.max_terms.max((8.0 * scale_hint) as usize + 32);
    loop {
        let mut value = Complex::new(0.0, 0.0);
        let mut binom = Complex::new(1.0, 0.0);
        for k in 0..k_cut {
            if k > 0 {
                binom *= (t + (k as f64 - 1.0)) / k as f64;
            }
            value += binom * (-z * (s + k as f64).ln()).exp();
        }
        let kf = Complex::new(k_cut as f64, 0.0);
        let mut tail = Complex::new(0.0, 0.0);
        let mut last = 0.0;
        for (j, dj) in d.iter().enumerate() {
            let term = dj * hurwitz_zeta(j as f64 - alpha, kf)?;
            tail += term;
            last = term.norm();
        }
        // truncation error decides convergence; the rounding floor of the
        // direct sum is reported but does not shrink with more terms
        let truncation = last * inv_gamma_t.norm();
        let tail_bound = truncation + 8.0 * f64::EPSILON * value.norm() * (k_cut as f64).sqrt();
        if truncation <= ctrl.tail_tolerance || k_cut >= 1 << 20 {
            if truncation > ctrl.tail_tolerance {
                return Err(Error::TailBound {
                    function: "zeta_t_series",
                    bound: tail_bound,
                    tolerance: ctrl.tail_tolerance,
                });
            }
            return Ok(SeriesValue {
                value: value + tail * inv_gamma_t,
                tail_bound,
                terms: k_cut,
            });
        }
        k_cut *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn t_zero_is_single_term() {
        let ctrl = SeriesControl::default();
        let (z, s) = (c(1.7, 0.2), c(0.8, 0.4));
        let v = zeta_t_series(z, s, c(0.0, 0.0), &ctrl).unwrap();
        assert!((v - (-z * s.ln()).exp()).norm() < 1e-15);
    }

    #[test]
    fn basel_through_t_one() {
        let v = zeta_t_series(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &SeriesControl::default()).unwrap();
        assert!((v - c(PI * PI / 6.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn t_two_reduces_to_zeta_three() {
        // Σ (k+1)(k+1)^{-4} = ζ(3)
        let v = zeta_t_series(c(4.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), &SeriesControl::default()).unwrap();
        assert!((v - c(1.202_056_903_159_594_2, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn tail_expansion_matches_binomial_asymptotics() {
        // Γ(k+t)/Γ(k+1) (1+s/k)^{-z} k^{1-t} against the expansion at k = 200
        let (z, s, t) = (c(3.1, 0.5), c(1.2, -0.3), c(1.6, 0.2));
        let d = tail_coefficients(z, s, t, TAIL_ORDER);
        let k = 200.0f64;
        let exact = (log_gamma(t + k).unwrap() - log_gamma(c(k + 1.0, 0.0)).unwrap() - z * (1.0 + s / k).ln()
            + (1.0 - t) * k.ln())
        .exp();
        let approx: Complex = d.iter().enumerate().map(|(j, dj)| dj * k.powi(-(j as i32))).sum();
        assert!((exact - approx).norm() < 1e-14);
    }

    #[test]
    fn divergent_region_rejected() {
        let r = zeta_t_series(c(1.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), &SeriesControl::default());
        assert!(matches!(r, Err(Error::Domain { .. })));
    }
}
