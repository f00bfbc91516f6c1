//! The test function `f_{s,t}(x) = (1 - e^{-|x|})^{1-t} e^{(1/2 - s)|x|}`
//! through its Fourier transform
//! `fhat_{s,t}(y) = B(2-t, s+iy-1/2) + B(2-t, s-iy-1/2)`.

use crate::binomial_zeta::{zeta_t_series_detailed, SeriesValue};
use crate::complex_core::{beta, digamma, hurwitz_zeta, log_gamma, Complex, SeriesControl};
use crate::error::{Error, Result};

const I: Complex = Complex::new(0.0, 1.0);

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

pub fn fhat(s: Complex, t: Complex, y: Complex) -> Result<Complex> {
    let a = 2.0 - t;
    Ok(beta(a, s + I * y - 0.5)? + beta(a, s - I * y - 0.5)?)
}

/// `(-1)^m ∂_s^m fhat_{s,t}(y) = m! Σ_k binom(t+k-2, k) [(s-1/2+k+iy)^{-(m+1)} + (s-1/2+k-iy)^{-(m+1)}]`.
///
/// Each half is `ζ_{t-1}(m+1, s-1/2±iy)`, summed directly with an
/// asymptotic tail, so `m > Re t - 2` is required.
pub fn fhat_m(s: Complex, t: Complex, y: Complex, m: u32, ctrl: &SeriesControl) -> Result<Complex> {
    fhat_m_detailed(s, t, y, m, ctrl).map(|v| v.value)
}

pub fn fhat_m_detailed(s: Complex, t: Complex, y: Complex, m: u32, ctrl: &SeriesControl) -> Result<SeriesValue> {
    if m == 0 || !(m as f64 > t.re - 2.0) {
        return Err(Error::domain(
            "fhat_m",
            t,
            format!("order {m} must be positive and exceed Re t - 2"),
        ));
    }
    let z = Complex::new(m as f64 + 1.0, 0.0);
    let plus = zeta_t_series_detailed(z, s - 0.5 + I * y, t - 1.0, ctrl)?;
    let minus = zeta_t_series_detailed(z, s - 0.5 - I * y, t - 1.0, ctrl)?;
    let f = factorial(m);
    Ok(SeriesValue {
        value: (plus.value + minus.value) * f,
        tail_bound: (plus.tail_bound + minus.tail_bound) * f,
        terms: plus.terms.max(minus.terms),
    })
}

/// `(-1)^m ∂_s^m fhat_{s,t}(y)` from the Beta form: with
/// `L(b) = log Γ(b) - log Γ(2-t+b)`, `∂_b^m B = B · Y_m(L', L'', ...)`
/// (complete Bell polynomials), `L^{(k+1)} = ψ^{(k)}(b) - ψ^{(k)}(2-t+b)` and
/// `ψ^{(k)}(w) = (-1)^{k+1} k! ζ(k+1, w)`.
///
/// Cheap for large `|y|`, where the series form needs `O(|y|)` terms.
pub fn fhat_m_beta(s: Complex, t: Complex, y: Complex, m: u32) -> Result<Complex> {
    let a = 2.0 - t;
    let m = m as usize;
    let mut total = Complex::new(0.0, 0.0);
    for b in [s + I * y - 0.5, s - I * y - 0.5] {
        let mut dl = Vec::with_capacity(m);
        for k in 0..m {
            let d = if k == 0 {
                digamma(b)? - digamma(a + b)?
            } else {
                let z = Complex::new(k as f64 + 1.0, 0.0);
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                (hurwitz_zeta(z, b)? - hurwitz_zeta(z, a + b)?) * (sign * factorial(k as u32))
            };
            dl.push(d);
        }
        let mut bell = vec![Complex::new(1.0, 0.0)];
        for n in 0..m {
            let mut acc = Complex::new(0.0, 0.0);
            let mut binom = 1.0;
            for k in 0..=n {
                acc += binom * dl[k] * bell[n - k];
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            bell.push(acc);
        }
        let value = (log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?).exp();
        total += value * bell[m];
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(total * sign)
}

// coefficients of prod_{j=1}^{k} (b - j) in powers of b
fn falling_poly(k: u32) -> Vec<f64> {
    let mut c = vec![1.0];
    for j in 1..=k {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * j as f64;
        }
        c = next;
    }
    c
}

fn poly_eval(c: &[f64], x: Complex) -> Complex {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &ci| acc * x + ci)
}

fn poly_deriv(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &ci)| ci * i as f64).collect()
}

/// Regularized `fhat_{s,n}(y)` for integer `n >= 2`, where `B(2-n, ·)` has
/// a pole in `t`.
///
/// Near `t = n`, `B(2-t, b) = R(b)/(t-n) + F(b) + O(t-n)` with `R` a
/// polynomial of degree `n-2`. The value returned is
/// `Σ_± [F(b_±) + R'(b_±)/2]`, `b_± = s ± iy - 1/2`; the half-derivative
/// term makes the reflection `s -> n-s` exact (see [`lemfe_residual`]).
/// For `n <= 1` this is plain [`fhat`].
pub fn fhat_reg(s: Complex, n: i64, y: Complex) -> Result<Complex> {
    if n <= 1 {
        return fhat(s, Complex::new(n as f64, 0.0), y);
    }
    let k = (n - 2) as u32;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = sign / factorial(k);
    let q = falling_poly(k);
    let dq = poly_deriv(&q);
    let psi_k1 = digamma(Complex::new(k as f64 + 1.0, 0.0))?;
    let mut total = Complex::new(0.0, 0.0);
    for b in [s + I * y - 0.5, s - I * y - 0.5] {
        // B(2-t, b) ≈ norm·Q(b)·[-1/ε + ψ(k+1) - ψ(b-k)], ε = t - n
        let finite = norm * poly_eval(&q, b) * (psi_k1 - digamma(b - k as f64)?);
        let residue_deriv = -norm * poly_eval(&dq, b);
        total += finite + 0.5 * residue_deriv;
    }
    Ok(total)
}

type Series = Vec<Complex>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

fn series_div(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    let mut q: Series = vec![Complex::new(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = a[k];
        for i in 0..k {
            acc -= q[i] * b[k - i];
        }
        q[k] = acc / b[0];
    }
    q
}

/// Taylor coefficients in `h` of
/// `T(u0 + h) = π/(n-2)! · tan(π(u0 + h)) · Π_{k=1}^{n-2} (u0 + h - 1/2 - k)`.
fn tan_term_series(n: i64, u0: Complex, order: usize) -> Result<Series> {
    let k = (n - 2) as u32;
    let len = order + 1;
    let phase = std::f64::consts::PI * u0;
    let (sin0, cos0) = (phase.sin(), phase.cos());
    let mut sin_s = Vec::with_capacity(len);
    let mut cos_s = Vec::with_capacity(len);
    let mut pk = 1.0;
    for j in 0..len {
        if j > 0 {
            pk *= std::f64::consts::PI / j as f64;
        }
        // d^j/dh^j sin(φ + πh) / j! = π^j/j! sin(φ + jπ/2)
        let (sj, cj) = match j % 4 {
            0 => (sin0, cos0),
            1 => (cos0, -sin0),
            2 => (-sin0, -cos0),
            _ => (-cos0, sin0),
        };
        sin_s.push(sj * pk);
        cos_s.push(cj * pk);
    }
    if cos_s[0].norm() < 1e-300 {
        return Err(Error::pole("tan_correction", u0));
    }
    let tan_s = series_div(&sin_s, &cos_s);
    let mut poly: Series = vec![Complex::new(0.0, 0.0); len];
    poly[0] = Complex::new(1.0, 0.0);
    for j in 1..=k {
        // multiply by (u0 - 1/2 - j) + h
        let c0 = u0 - 0.5 - j as f64;
        let mut next = vec![Complex::new(0.0, 0.0); len];
        for i in 0..len {
            next[i] += poly[i] * c0;
            if i + 1 < len {
                next[i + 1] += poly[i];
            }
        }
        poly = next;
    }
    let scale = std::f64::consts::PI / factorial(k);
    Ok(series_mul(&tan_s, &poly).into_iter().map(|c| c * scale).collect())
}

/// `∂_s^m` of the symmetric tangent correction
/// `G(s, y) = (T(s + iy) + T(s - iy)) / 2` for integer `n >= 2`.
pub fn tan_correction_deriv(n: i64, s: Complex, y: Complex, m: u32) -> Result<Complex> {
    if n < 2 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let f = factorial(m);
    let mut total = Complex::new(0.0, 0.0);
    for u in [s + I * y, s - I * y] {
        let ser = tan_term_series(n, u, m as usize)?;
        total += ser[m as usize] * f;
    }
    Ok(0.5 * total)
}

/// Residual of the reflection identity for `fhat` at integer `n`.
///
/// For `n <= 1`: `|fhat(n-s, n, y) - (-1)^n fhat(s, n, y)|`.
/// For `n >= 2`, with the regularized transform and the correction `G` of
/// [`tan_correction_deriv`]:
/// `|fhat_reg(n-s) + (-1)^n G(n-s) - (-1)^n fhat_reg(s) - G(s)|`.
pub fn lemfe_residual(n: i64, s: Complex, y: Complex) -> Result<f64> {
    let nn = Complex::new(n as f64, 0.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    if n <= 1 {
        let lhs = fhat(nn - s, nn, y)?;
        let rhs = sign * fhat(s, nn, y)?;
        return Ok((lhs - rhs).norm());
    }
    let lhs = fhat_reg(nn - s, n, y)? + sign * tan_correction_deriv(n, nn - s, y, 0)?;
    let rhs = sign * fhat_reg(s, n, y)? + tan_correction_deriv(n, s, y, 0)?;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn fhat_anchors() {
        let v = fhat(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((v - 4.0).norm() < 1e-14);
        let (s, t, y) = (c(1.2, 0.0), c(0.3, 0.0), c(0.7, 0.1));
        assert!((fhat(s, t, y).unwrap() - fhat(s, t, -y).unwrap()).norm() < 1e-13);
        let y0 = fhat(s, t, c(0.0, 0.0)).unwrap();
        assert!((y0 - 2.0 * beta(2.0 - t, s - 0.5).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn fhat_m_matches_difference_quotient() {
        // (-1)^2 ∂_s^2 fhat at (2, 1, 0.5) by a 5-point stencil
        let (s, t, y) = (c(2.0, 0.0), c(1.0, 0.0), c(0.5, 0.0));
        let h = 1e-3;
        let f = |d: f64| fhat(s + d, t, y).unwrap();
        let d2 = (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h);
        let series = fhat_m(s, t, y, 2, &SeriesControl::default()).unwrap();
        assert!((series - d2).norm() < 1e-6, "{series} vs {d2}");
    }

    #[test]
    fn beta_form_matches_series() {
        let ctrl = SeriesControl::default();
        for (s, t, y, m) in [
            (c(2.0, 0.0), c(0.0, 0.0), c(0.7, 0.0), 2),
            (c(1.5, 0.5), c(0.5, 0.0), c(30.0, 0.0), 2),
            (c(2.5, 0.0), c(1.0, 0.0), c(3.0, 0.1), 3),
            (c(1.3, 0.0), c(1.7, 0.2), c(12.0, 0.0), 1),
        ] {
            let a = fhat_m(s, t, y, m, &ctrl).unwrap();
            let b = fhat_m_beta(s, t, y, m).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-3), "{a} vs {b}");
        }
    }

    #[test]
    fn fhat_m_t_one_collapses() {
        // only k = 0 survives: 2·m!·(s-1/2)^{-(m+1)} at y = 0
        let s = c(1.7, 0.3);
        let v = fhat_m(s, c(1.0, 0.0), c(0.0, 0.0), 3, &SeriesControl::default()).unwrap();
        assert!((v - 12.0 * (s - 0.5).powi(-4)).norm() < 1e-13);
    }

    #[test]
    fn fhat_m_order_checked() {
        let ctrl = SeriesControl::default();
        assert!(fhat_m(c(2.0, 0.0), c(3.0, 0.0), c(0.0, 0.0), 1, &ctrl).is_err());
        assert!(fhat_m(c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), 0, &ctrl).is_err());
    }

    #[test]
    fn regularized_transform_is_finite_part() {
        // compare with the symmetric difference in t around n = 3
        let (s, y) = (c(1.3, 0.2), c(0.4, 0.0));
        let n = 3;
        let e = 1e-5;
        let mid = 0.5 * (fhat(s, c(3.0 + e, 0.0), y).unwrap() + fhat(s, c(3.0 - e, 0.0), y).unwrap());
        // the symmetric average drops the 1/ε pole, leaving F
        let reg = fhat_reg(s, n, y).unwrap();
        let half_rderiv = reg - mid;
        // R(b) = -(−1)^1/1!·(b-1) so R'(b) = 1 per branch, half of 2
        assert!((half_rderiv - 1.0).norm() < 1e-6, "{half_rderiv}");
    }

    #[test]
    fn reflection_identities() {
        for n in -2..=5 {
            let r = lemfe_residual(n, c(1.1, 0.3), c(0.25, 0.0)).unwrap();
            assert!(r < 1e-10, "n={n}: {r}");
        }
    }

    #[test]
    fn tan_derivative_matches_difference() {
        let (n, s, y) = (4, c(0.7, 0.2), c(0.3, 0.0));
        let h = 1e-4;
        let g = |d: f64| tan_correction_deriv(n, s + d, y, 0).unwrap();
        let fd = (8.0 * (g(h) - g(-h)) - (g(2.0 * h) - g(-2.0 * h))) / (12.0 * h);
        let an = tan_correction_deriv(n, s, y, 1).unwrap();
        assert!((an - fd).norm() < 1e-8, "{an} vs {fd}");
    }
}
