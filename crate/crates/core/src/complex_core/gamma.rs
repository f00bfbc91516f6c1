use super::{is_nonpositive_integer, Complex, BERNOULLI_EVEN};
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

// Stirling's series is used once |w| >= STIRLING_MIN and Re w > 0.
const STIRLING_MIN: f64 = 15.0;

/// Shift `z` upward until Stirling's series is accurate. Returns the shifted
/// argument and `sum_{k<n} log(z + k)` (principal logs).
///
/// The real part is taken from the running product so that only one
/// logarithm is rounded; the imaginary part is the sum of the arguments.
fn shift_up(z: Complex) -> (Complex, Complex) {
    let mut w = z;
    let mut prod = Complex::new(1.0, 0.0);
    let mut ln_abs = 0.0;
    let mut arg = 0.0;
    while w.re <= 0.0 || w.norm() < STIRLING_MIN {
        prod *= w;
        arg += w.im.atan2(w.re);
        let m = prod.norm();
        if !(1e-100..=1e100).contains(&m) {
            ln_abs += m.ln();
            prod /= m;
        }
        w += 1.0;
    }
    (w, Complex::new(ln_abs + prod.norm().ln(), arg))
}

/// Log-gamma on the standard analytic branch: `log_gamma(z + 1) =
/// log_gamma(z) + log z` with principal `log z`, and real on the positive
/// axis. `exp(log_gamma(z)) = Γ(z)` everywhere off the poles.
pub fn log_gamma(z: Complex) -> Result<Complex> {
    if is_nonpositive_integer(z, 0.0) {
        return Err(Error::pole("log_gamma", z));
    }
    let (w, shift) = shift_up(z);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex::new(0.0, 0.0);
    let mut pw = inv;
    for (j, b) in BERNOULLI_EVEN.iter().take(11).enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        series += pw * (b / (k * (k - 1.0)));
        pw *= inv2;
    }
    let lg = (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + series;
    Ok(lg - shift)
}

pub fn gamma(z: Complex) -> Result<Complex> {
    Ok(log_gamma(z)?.exp())
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex) -> Result<Complex> {
    if is_nonpositive_integer(z, 0.0) {
        return Err(Error::pole("digamma", z));
    }
    let mut w = z;
    let mut acc = Complex::new(0.0, 0.0);
    while w.re <= 0.0 || w.norm() < STIRLING_MIN {
        acc += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex::new(0.0, 0.0);
    let mut pw = inv2;
    for (j, b) in BERNOULLI_EVEN.iter().take(11).enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        series += pw * (b / k);
        pw *= inv2;
    }
    Ok(w.ln() - 0.5 * inv - series - acc)
}

// Beta with a small positive-integer argument is a finite product.
fn small_positive_integer(z: Complex) -> Option<u32> {
    if z.im == 0.0 && z.re >= 1.0 && z.re <= 64.0 && z.re.fract() == 0.0 {
        Some(z.re as u32)
    } else {
        None
    }
}

/// `log B(a, b)`; errors at poles of `Γ(a)`, `Γ(b)` or zeros of `1/Γ(a+b)`.
pub fn log_beta(a: Complex, b: Complex) -> Result<Complex> {
    // canonical order so that beta(a, b) and beta(b, a) run the same code
    let (a, b) = if (a.re, a.im) <= (b.re, b.im) { (a, b) } else { (b, a) };
    for (arg, v) in [("a", a), ("b", b), ("a+b", a + b)] {
        if is_nonpositive_integer(v, 0.0) {
            return Err(Error::domain("beta", v, format!("{arg} is a nonpositive integer")));
        }
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Euler Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: Complex, b: Complex) -> Result<Complex> {
    let (a, b) = if (a.re, a.im) <= (b.re, b.im) { (a, b) } else { (b, a) };
    let int_arg = small_positive_integer(a)
        .map(|n| (n, b))
        .or_else(|| small_positive_integer(b).map(|n| (n, a)));
    if let Some((n, other)) = int_arg {
        // B(n, w) = (n-1)! / (w (w+1) ... (w+n-1))
        if is_nonpositive_integer(other, 0.0) {
            return Err(Error::domain("beta", other, "argument is a nonpositive integer"));
        }
        let mut den = Complex::new(1.0, 0.0);
        let mut num = 1.0;
        for i in 0..n {
            den *= other + i as f64;
            if i > 0 {
                num *= i as f64;
            }
        }
        return Ok(num / den);
    }
    Ok(log_beta(a, b)?.exp())
}

/// Taylor coefficients of `1/Γ(z)` about `z = 0` up to `z^3`.
pub(crate) fn reciprocal_gamma_taylor() -> [f64; 4] {
    let g = EULER_GAMMA;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    [0.0, 1.0, g, 0.5 * g * g - pi2 / 12.0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn log_gamma_anchors() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!((log_gamma(c(4.0, 0.0)).unwrap() - c(6f64.ln(), 0.0)).norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    #[test]
    fn log_gamma_poles() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn reflection_formula() {
        // Γ(z)Γ(1-z) = π / sin(πz)
        for z in [c(0.3, 0.2), c(-2.7, 1.1), c(4.2, -3.0), c(-12.5, 0.0)] {
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            let rhs = PI / (z * PI).sin();
            assert!((lhs / rhs - 1.0).norm() < 2e-13, "z = {z}");
        }
    }

    #[test]
    fn factorials_large() {
        // Γ(41) = 40!
        let mut f = 1.0f64;
        for k in 1..=40 {
            f *= k as f64;
        }
        let lg = log_gamma(c(41.0, 0.0)).unwrap();
        assert!((lg.re - f.ln()).abs() < 1e-12);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap() + EULER_GAMMA).norm() < 1e-14);
        // ψ(1/2) = -γ - 2 ln 2
        let v = digamma(c(0.5, 0.0)).unwrap();
        assert!((v.re + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        // recurrence ψ(z+1) = ψ(z) + 1/z
        let z = c(-1.3, 0.7);
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
        assert!(d.norm() < 1e-13);
    }

    #[test]
    fn beta_values() {
        assert!((beta(c(1.0, 0.0), c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((beta(c(2.0, 0.0), c(3.0, 0.0)).unwrap() - 1.0 / 12.0).norm() < 1e-16);
        assert!((beta(c(0.5, 0.0), c(0.5, 0.0)).unwrap() - PI).norm() < 2e-14);
        let (a, b) = (c(0.3, 1.2), c(2.5, -0.4));
        assert_eq!(beta(a, b).unwrap(), beta(b, a).unwrap());
        assert!(beta(c(-1.0, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn reciprocal_gamma_series_matches() {
        let [c0, c1, c2, c3] = reciprocal_gamma_taylor();
        let z = 1e-3;
        let exact = (-log_gamma(c(z, 0.0)).unwrap()).exp().re;
        let approx = c0 + c1 * z + c2 * z * z + c3 * z * z * z;
        assert!((exact - approx).abs() < 1e-12);
    }
}
