//! Integer `t = n`: `ζ_n(z, s)` as a finite combination of Hurwitz zetas.
//!
//! For `n >= 1`, `binom(n+k-1, k)` is a polynomial of degree `n-1` in `k+s`,
//! so `ζ_n(z,s) = Σ_j c_j(s,n) ζ(z-j, s)`. For `n = 0` only `k = 0`
//! survives, and for `n < 0` the binomials vanish beyond `k = -n`.

use crate::complex_core::{
    gen_binom, hurwitz_zeta_with, hurwitz_zeta_zderiv_with, is_nonpositive_integer, shifted_binomial_poly, Complex,
    SeriesControl,
};
use crate::error::{Error, Result};

fn check_s(function: &'static str, s: Complex) -> Result<()> {
    if is_nonpositive_integer(s, 0.0) {
        return Err(Error::domain(function, s, "s is a nonpositive integer"));
    }
    Ok(())
}

// coefficients whose Hurwitz term is evaluated; a vanishing coefficient
// sitting on the Hurwitz pole cancels it
fn active_terms(function: &'static str, z: Complex, coeffs: &[Complex]) -> Result<Vec<(usize, Complex)>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = Vec::with_capacity(coeffs.len());
    for (j, &cj) in coeffs.iter().enumerate() {
        if z - j as f64 == Complex::new(1.0, 0.0) {
            if cj.norm() <= 1e-14 * scale {
                continue;
            }
            return Err(Error::pole(function, z));
        }
        out.push((j, cj));
    }
    Ok(out)
}

/// `ζ_n(z, s)` for integer `n`.
pub fn zeta_t_int(z: Complex, s: Complex, n: i64, ctrl: &SeriesControl) -> Result<Complex> {
    check_s("zeta_t_int", s)?;
    if n <= 0 {
        let t = Complex::new(n as f64, 0.0);
        let mut acc = Complex::new(0.0, 0.0);
        for k in 0..=(-n) as usize {
            acc += gen_binom(t, k) * (-z * (s + k as f64).ln()).exp();
        }
        return Ok(acc);
    }
    let coeffs = shifted_binomial_poly(s, n as u32);
    let mut acc = Complex::new(0.0, 0.0);
    for (j, cj) in active_terms("zeta_t_int", z, &coeffs)? {
        acc += cj * hurwitz_zeta_with(z - j as f64, s, ctrl)?;
    }
    Ok(acc)
}

/// `∂_z ζ_n(z, s)` for integer `n`.
pub fn zeta_t_int_zderiv(z: Complex, s: Complex, n: i64, ctrl: &SeriesControl) -> Result<Complex> {
    check_s("zeta_t_int_zderiv", s)?;
    if n <= 0 {
        let t = Complex::new(n as f64, 0.0);
        let mut acc = Complex::new(0.0, 0.0);
        for k in 0..=(-n) as usize {
            let l = (s + k as f64).ln();
            acc -= gen_binom(t, k) * l * (-z * l).exp();
        }
        return Ok(acc);
    }
    let coeffs = shifted_binomial_poly(s, n as u32);
    let mut acc = Complex::new(0.0, 0.0);
    for (j, cj) in active_terms("zeta_t_int_zderiv", z, &coeffs)? {
        acc += cj * hurwitz_zeta_zderiv_with(z - j as f64, s, ctrl)?;
    }
    Ok(acc)
}

/// Poles of `ζ_n(·, s)`: `z = j + 1` for every nonzero `c_j`, with residue `c_j`.
pub fn zeta_t_int_poles(s: Complex, n: i64) -> Vec<(Complex, Complex)> {
    if n <= 0 {
        return Vec::new();
    }
    let coeffs = shifted_binomial_poly(s, n as u32);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 1e-14 * scale)
        .map(|(j, &c)| (Complex::new(j as f64 + 1.0, 0.0), c))
        .collect()
}
