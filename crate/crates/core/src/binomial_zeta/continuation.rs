//! Analytic continuation of `ζ_t(z, s)` in `z` by splitting the Mellin
//! integral `Γ(z) ζ_t(z, s) = ∫_0^∞ θ_t(x, s) x^{z-1} dx`, where
//! `θ_t(x, s) = e^{-sx} (1 - e^{-x})^{-t}`.
//!
//! Near zero, `θ_t(x, s) = Σ_m β_m x^{m-t}` with `β_m` the Taylor
//! coefficients of `e^{-sx} (x / (1 - e^{-x}))^t` (radius `2π`). Integrating
//! termwise on `[0, x0]` gives the pole part `Σ β_m x0^{z-t+m} / (z-t+m)`;
//! the rest `∫_{x0}^∞` is entire in `z` and computed by quadrature.

use crate::complex_core::{integrate, is_nonpositive_integer, log_gamma, Complex, SeriesControl, EULER_GAMMA};
use crate::error::{Error, Result};

use super::integer_t;

const MIN_ORDER: usize = 24;
const MAX_ORDER: usize = 400;

/// A simple pole of `z ↦ ζ_t(z, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationPole {
    /// index `m` of the generating coefficient, the pole sits at `z = t - m`
    pub order: usize,
    pub location: Complex,
    pub residue: Complex,
}

/// Split-integral representation of `ζ_t(·, s)` for fixed `s`, `t`.
#[derive(Debug, Clone)]
pub struct ContinuationRep {
    s: Complex,
    t: Complex,
    split_point: f64,
    beta: Vec<Complex>,
    rel_tol: f64,
}

// Taylor coefficients of e^{-sx} (x/(1-e^{-x}))^t up to x^order
fn beta_coefficients(s: Complex, t: Complex, order: usize) -> Vec<Complex> {
    let n = order + 1;
    // g(x) = (1 - e^{-x})/x = Σ (-1)^k x^k / (k+1)!
    let mut g = vec![0.0f64; n];
    let mut f = 1.0;
    for (k, gk) in g.iter_mut().enumerate() {
        f *= (k + 1) as f64;
        *gk = if k % 2 == 0 { 1.0 / f } else { -1.0 / f };
    }
    // h = log g
    let mut h = vec![0.0f64; n];
    for k in 1..n {
        let mut acc = k as f64 * g[k];
        for i in 1..k {
            acc -= i as f64 * h[i] * g[k - i];
        }
        h[k] = acc / k as f64;
    }
    // ψ = -s x - t h, β = exp ψ
    let psi: Vec<Complex> = (0..n)
        .map(|k| {
            let mut v = -t * h[k];
            if k == 1 {
                v -= s;
            }
            v
        })
        .collect();
    let mut beta = vec![Complex::new(0.0, 0.0); n];
    beta[0] = Complex::new(1.0, 0.0);
    for k in 1..n {
        let mut acc = Complex::new(0.0, 0.0);
        for i in 1..=k {
            acc += psi[i] * beta[k - i] * i as f64;
        }
        beta[k] = acc / k as f64;
    }
    beta
}

impl ContinuationRep {
    pub fn new(s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Self> {
        Self::with_min_order(s, t, MIN_ORDER, ctrl)
    }

    /// Representation keeping at least `min_order + 1` pole coefficients.
    pub fn with_min_order(s: Complex, t: Complex, min_order: usize, ctrl: &SeriesControl) -> Result<Self> {
        ctrl.validate()?;
        if !(s.re > 0.0) {
            return Err(Error::domain(
                "zeta_t_cont",
                s,
                "continuation by integral splitting needs Re s > 0",
            ));
        }
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::domain("zeta_t_cont", t, "non-finite t"));
        }
        let split_point = (3.0 / s.norm()).min(1.0);
        let min_order = min_order.clamp(MIN_ORDER, MAX_ORDER);
        let mut order = min_order.max(64);
        let beta = loop {
            let beta = beta_coefficients(s, t, order);
            let scaled: Vec<f64> = beta
                .iter()
                .enumerate()
                .map(|(m, b)| b.norm() * split_point.powi(m as i32))
                .collect();
            let top = scaled.iter().cloned().fold(0.0, f64::max);
            let cut = (min_order..=order)
                .find(|&m| scaled[m..(m + 3).min(order + 1)].iter().all(|&v| v <= 1e-18 * top));
            match cut {
                Some(m) => break beta[..=m.max(min_order)].to_vec(),
                None if order >= MAX_ORDER => {
                    return Err(Error::convergence(
                        "zeta_t_cont",
                        "pole-part coefficients do not decay within the maximal order",
                    ))
                }
                None => order = (2 * order).min(MAX_ORDER),
            }
        };
        Ok(ContinuationRep {
            s,
            t,
            split_point,
            beta,
            rel_tol: ctrl.tail_tolerance.min(1e-12),
        })
    }

    pub fn s(&self) -> Complex {
        self.s
    }

    pub fn t(&self) -> Complex {
        self.t
    }

    pub fn split_point(&self) -> f64 {
        self.split_point
    }

    /// `β_0, …, β_M`.
    pub fn pole_coefficients(&self) -> &[Complex] {
        &self.beta
    }

    fn significant(&self, m: usize) -> bool {
        let x0 = self.split_point;
        let top = self.beta[..=m]
            .iter()
            .enumerate()
            .map(|(k, b)| b.norm() * x0.powi(k as i32))
            .fold(0.0, f64::max);
        self.beta[m].norm() * x0.powi(m as i32) > 1e-13 * top
    }

    fn near(a: Complex, b: Complex) -> bool {
        (a - b).norm() <= 1e-13 * (1.0 + a.norm())
    }

    /// `∫_{x0}^∞ θ_t(x, s) x^{z-1} dx`, entire in `z`.
    pub fn entire_part(&self, z: Complex) -> Result<Complex> {
        let (s, t, x0) = (self.s, self.t, self.split_point);
        let log_abs = |x: f64| -s.re * x - t.re * (-(-x).exp()).ln_1p() + (z.re - 1.0) * x.ln();
        let mut peak = x0;
        if z.re > 1.0 {
            peak = peak.max((z.re - 1.0) / s.re);
        }
        let lmax = log_abs(x0).max(log_abs(peak));
        let step = (4.0 / s.re).max(0.5);
        let mut upper = peak + step;
        let mut guard = 0;
        while log_abs(upper) - s.re.ln() > lmax - 44.0 {
            upper += step;
            guard += 1;
            if guard > 100_000 {
                return Err(Error::convergence("zeta_t_cont", "integrand does not decay"));
            }
        }
        let integrand = |x: f64| {
            let l = (-(-x).exp()).ln_1p();
            (-s * x - t * l + (z - 1.0) * x.ln()).exp()
        };
        let oscillations = (upper - x0) * (s.im.abs() + z.im.abs() / x0.max(1.0) + 1.0) / 3.0;
        let pieces = (oscillations.ceil() as usize).clamp(4, 4000);
        let r = integrate(integrand, x0, upper, pieces, 0.0, self.rel_tol, 40_000)?;
        Ok(r.value)
    }

    /// `Γ(z) ζ_t(z, s)`, meromorphic with simple poles at `z = t - m`.
    pub fn mellin(&self, z: Complex) -> Result<Complex> {
        let x0 = self.split_point;
        let mut pole_sum = Complex::new(0.0, 0.0);
        for (m, b) in self.beta.iter().enumerate() {
            let d = z - self.t + m as f64;
            if Self::near(z, self.t - m as f64) {
                if self.significant(m) {
                    return Err(Error::pole("zeta_t_cont", z));
                }
                continue;
            }
            pole_sum += b * x0.powi(m as i32) / d;
        }
        let lx0 = x0.ln();
        Ok(((z - self.t) * lx0).exp() * pole_sum + self.entire_part(z)?)
    }

    fn covers(&self, z: Complex) -> bool {
        (self.t.re - z.re) < self.beta.len() as f64 - 4.0
    }

    /// `ζ_t(z, s)`.
    pub fn zeta(&self, z: Complex) -> Result<Complex> {
        if !self.covers(z) {
            let need = (self.t.re - z.re).ceil() as usize + 8;
            let ctrl = SeriesControl {
                tail_tolerance: self.rel_tol,
                ..SeriesControl::default()
            };
            return ContinuationRep::with_min_order(self.s, self.t, need, &ctrl)?.zeta(z);
        }
        if is_nonpositive_integer(z, 1e-13) {
            // 1/Γ(z) vanishes; only a pole of the Mellin transform survives
            let j = (-z.re.round()) as i64;
            if let Some(n) = integer_t(self.t) {
                let m = n + j;
                if m >= 0 && (m as usize) < self.beta.len() {
                    let mut fact = 1.0;
                    for i in 1..=j {
                        fact *= i as f64;
                    }
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    return Ok(self.beta[m as usize] * sign * fact);
                }
            }
            return Ok(Complex::new(0.0, 0.0));
        }
        Ok(self.mellin(z)? * (-log_gamma(z)?).exp())
    }

    /// `∂_z ζ_t(z, s)` at `z = 0`. With `1/Γ(z) = z + γ z² + O(z³)`, this is
    /// `F(0)` when the Mellin transform `F` is regular at 0, and
    /// `β γ + F_reg(0)` when `F = β/z + F_reg`.
    pub fn zeta_zderiv_at_zero(&self) -> Result<Complex> {
        let x0 = self.split_point;
        let lx0 = x0.ln();
        let zero = Complex::new(0.0, 0.0);
        let m0 = integer_t(self.t).filter(|&n| n >= 0 && (n as usize) < self.beta.len());
        let Some(m0) = m0 else {
            return self.mellin(zero);
        };
        let m0 = m0 as usize;
        let mut acc = Complex::new(0.0, 0.0);
        for (m, b) in self.beta.iter().enumerate() {
            if m == m0 {
                continue;
            }
            let d = m as f64 - self.t;
            acc += b * x0.powi(m as i32) / d;
        }
        let b0 = self.beta[m0];
        let gamma2 = crate::complex_core::reciprocal_gamma_taylor()[2];
        debug_assert!((gamma2 - EULER_GAMMA).abs() < 1e-16);
        Ok(((-self.t) * lx0).exp() * acc + b0 * lx0 + self.entire_part(zero)? + b0 * gamma2)
    }

    /// Poles of `ζ_t(·, s)` visible in the representation: `z = t - m` for
    /// every represented `m` with `β_m ≠ 0`, except where `t - m` is a
    /// nonpositive integer (cancelled by the zero of `1/Γ`). For non-integer
    /// `t` the list is infinite in principle and is cut at the represented order.
    pub fn poles(&self) -> Result<Vec<ContinuationPole>> {
        let mut out = Vec::new();
        for m in 0..self.beta.len() {
            let location = self.t - m as f64;
            if is_nonpositive_integer(location, 1e-12) || !self.significant(m) {
                continue;
            }
            let residue = self.beta[m] * (-log_gamma(location)?).exp();
            out.push(ContinuationPole {
                order: m,
                location,
                residue,
            });
        }
        Ok(out)
    }
}

/// `ζ_t(z, s)` by the split-integral continuation (`Re s > 0`).
pub fn zeta_t_cont(z: Complex, s: Complex, t: Complex, ctrl: &SeriesControl) -> Result<Complex> {
    ContinuationRep::new(s, t, ctrl)?.zeta(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial_zeta::{zeta_t_int, zeta_t_series};
    use crate::complex_core::hurwitz_zeta;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn coefficients_for_hurwitz_case() {
        // t = 1: x e^{-sx}/(1-e^{-x}) = Σ (-1)^m B_m(s) x^m / m!, B_1(s) = s - 1/2
        let s = c(0.7, 0.0);
        let b = beta_coefficients(s, c(1.0, 0.0), 4);
        assert!((b[0] - 1.0).norm() < 1e-15);
        assert!((b[1] + (s - 0.5)).norm() < 1e-15);
        // B_2(s)/2 = (s^2 - s + 1/6)/2
        assert!((b[2] - (s * s - s + 1.0 / 6.0) / 2.0).norm() < 1e-15);
    }

    #[test]
    fn agrees_with_series() {
        let (z, s, t) = (c(4.0, 0.0), c(1.3, 0.0), c(1.7, 0.0));
        let a = zeta_t_cont(z, s, t, &ctrl()).unwrap();
        let b = zeta_t_series(z, s, t, &ctrl()).unwrap();
        assert!((a - b).norm() < 1e-10 * b.norm(), "{a} vs {b}");
    }

    #[test]
    fn agrees_with_integer_path() {
        let (z, s) = (c(-1.5, 0.0), c(2.0, 0.0));
        let a = zeta_t_cont(z, s, c(2.0, 0.0), &ctrl()).unwrap();
        let b = zeta_t_int(z, s, 2, &ctrl()).unwrap();
        assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn hurwitz_values_at_nonpositive_integers() {
        let s = c(0.6, 0.3);
        for j in 0..4 {
            let z = c(-(j as f64), 0.0);
            let a = zeta_t_cont(z, s, c(1.0, 0.0), &ctrl()).unwrap();
            let b = hurwitz_zeta(z, s).unwrap();
            assert!((a - b).norm() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn hurwitz_pole_has_unit_residue() {
        let rep = ContinuationRep::new(c(0.8, 0.0), c(1.0, 0.0), &ctrl()).unwrap();
        let poles = rep.poles().unwrap();
        assert_eq!(poles.len(), 1);
        assert_eq!(poles[0].location, c(1.0, 0.0));
        assert!((poles[0].residue - 1.0).norm() < 1e-13);
        assert!(matches!(rep.zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn non_integer_t_has_a_ladder_of_poles() {
        let t = c(1.5, 0.0);
        let rep = ContinuationRep::new(c(1.2, 0.0), t, &ctrl()).unwrap();
        let poles = rep.poles().unwrap();
        assert!(poles.len() > 10);
        for (i, p) in poles.iter().take(4).enumerate() {
            assert_eq!(p.location, t - i as f64);
        }
        // residue at z = t is 1/Γ(t)
        let expect = (-log_gamma(t).unwrap()).exp();
        assert!((poles[0].residue - expect).norm() < 1e-14);
        assert!(rep.zeta(c(0.5, 0.0)).is_err());
        // non-integer t: ζ_t vanishes at nonpositive integers
        assert_eq!(rep.zeta(c(-2.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn removable_pole_when_coefficient_vanishes() {
        // t = 2, s = 1: the z = 1 pole has residue 1 - s = 0
        let rep = ContinuationRep::new(c(1.0, 0.0), c(2.0, 0.0), &ctrl()).unwrap();
        let locs: Vec<_> = rep.poles().unwrap().iter().map(|p| p.location).collect();
        assert_eq!(locs, vec![c(2.0, 0.0)]);
    }

    #[test]
    fn complex_arguments() {
        let (z, s) = (c(-0.7, 1.2), c(0.9, 2.5));
        let a = zeta_t_cont(z, s, c(3.0, 0.0), &ctrl()).unwrap();
        let b = zeta_t_int(z, s, 3, &ctrl()).unwrap();
        assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn far_left_arguments_extend_order() {
        // ζ(-29) = -B_30 / 30
        let a = zeta_t_cont(c(-29.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &ctrl()).unwrap();
        let expect = -8_615_841_276_005.0 / 14_322.0 / 30.0;
        assert!((a.re - expect).abs() < 1e-10 * expect.abs(), "{a} vs {expect}");
    }

    #[test]
    fn requires_positive_real_part() {
        assert!(matches!(
            zeta_t_cont(c(2.0, 0.0), c(-0.5, 1.0), c(0.5, 0.0), &ctrl()),
            Err(Error::Domain { .. })
        ));
    }
}
