//! Truncated Euler products over a length spectrum, all in log space:
//! the Selberg zeta `Z(s)`, the Ruelle zeta `ζ(s)`, the two-variable
//! `Z(s, t)`, the rank-`r` zeta `Z^(r)(s)`, and `s`-derivatives of
//! `log Z(s, t)`.
//!
//! Every logarithm is `log(1 - w)` with `|w| < 1` on the principal branch,
//! so phases add without wrapping. Tail bounds cover the truncation of the
//! `n`-tower only; classes above the spectrum's norm cutoff are unknown and
//! not bounded.

use crate::complex_core::{gen_binom, ln_one_minus, Complex};
use crate::error::{Error, Result};
use crate::geodesic::{check_power_closed, LengthSpectrum};

/// Hard cap on the `n`-tower length.
pub const MAX_N_CUTOFF: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Classes with larger norm are ignored.
    pub norm_cutoff: f64,
    /// Fixed tower length; `None` picks the shortest one meeting
    /// `tail_tolerance`.
    pub n_cutoff: Option<usize>,
    pub tail_tolerance: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            norm_cutoff: f64::INFINITY,
            n_cutoff: None,
            tail_tolerance: 1e-14,
        }
    }
}

impl TruncationPolicy {
    pub fn with_n_cutoff(n: usize) -> Self {
        TruncationPolicy {
            n_cutoff: Some(n),
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.norm_cutoff > 1.0) {
            return Err(Error::Invariant(format!("norm cutoff {} must exceed 1", self.norm_cutoff)));
        }
        if !(self.tail_tolerance > 0.0) {
            return Err(Error::Invariant("tail tolerance must be positive".into()));
        }
        if matches!(self.n_cutoff, Some(n) if n > MAX_N_CUTOFF) {
            return Err(Error::Invariant(format!("n_cutoff above the cap {MAX_N_CUTOFF}")));
        }
        Ok(())
    }
}

/// A product value with its truncation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaPoint {
    pub s: Complex,
    pub t: Complex,
    /// `log|Z| + i·(accumulated phase)`.
    pub log_value: Complex,
    /// Last `n` of the tower that was summed.
    pub n_cutoff: usize,
    pub norm_cutoff: f64,
    pub primes_used: usize,
    pub tail_bound: f64,
}

fn check_s(function: &'static str, s: Complex) -> Result<()> {
    // finite spectra converge for Re s > 0; s = 1 is kept for the
    // single-factor examples
    if !(s.re >= 1.0) {
        return Err(Error::domain(function, s, "the product needs Re s >= 1"));
    }
    Ok(())
}

fn primes(spec: &LengthSpectrum, pol: &TruncationPolicy) -> Vec<(f64, f64)> {
    spec.primitives()
        .filter(|e| e.norm <= pol.norm_cutoff)
        .map(|e| (e.norm, e.multiplicity as f64))
        .collect()
}

/// Bound on `Σ_p m Σ_{n>k} |binom_n(t)| |log(1 - N^{-s-n})|`.
fn tower_tail(primes: &[(f64, f64)], sigma: f64, t: Complex, k: usize) -> f64 {
    if let Some(n) = crate::binomial_zeta::integer_t(t) {
        if n <= 0 && k as i64 >= -n {
            return 0.0;
        }
    }
    let b_next = gen_binom(t, k + 1).norm();
    let rho = ((t.norm() + k as f64 + 1.0) / (k as f64 + 2.0)).max(1.0);
    let mut total = 0.0;
    for &(norm, mult) in primes {
        let w = norm.powf(-sigma - (k as f64 + 1.0));
        let q = rho / norm;
        if q >= 1.0 || w >= 1.0 {
            return f64::INFINITY;
        }
        total += mult * b_next * w / (1.0 - w) / (1.0 - q);
    }
    total
}

/// Tower length used for `(s, t)` under `pol`, and its tail bound.
pub fn tower_cutoff(s: Complex, t: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<(usize, f64)> {
    pol.validate()?;
    let ps = primes(spec, pol);
    choose_cutoff(&ps, s.re, t, pol)
}

fn choose_cutoff(ps: &[(f64, f64)], sigma: f64, t: Complex, pol: &TruncationPolicy) -> Result<(usize, f64)> {
    let (k, tail) = match pol.n_cutoff {
        Some(k) => (k, tower_tail(ps, sigma, t, k)),
        None => {
            let mut k = 0;
            loop {
                let tail = tower_tail(ps, sigma, t, k);
                if tail <= pol.tail_tolerance || k >= MAX_N_CUTOFF {
                    break (k, tail);
                }
                k += 1;
            }
        }
    };
    if !(tail <= pol.tail_tolerance) {
        return Err(Error::TailBound {
            function: "log_Z2",
            bound: tail,
            tolerance: pol.tail_tolerance,
        });
    }
    Ok((k, tail))
}

/// `log Z(s, t) = Σ_p m_p Σ_{n=0}^{K} binom(t+n-1, n) log(1 - N(p)^{-s-n})`.
pub fn log_z2(s: Complex, t: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<ZetaPoint> {
    check_s("log_Z2", s)?;
    pol.validate()?;
    let ps = primes(spec, pol);
    let (k, tail) = choose_cutoff(&ps, s.re, t, pol)?;
    Ok(ZetaPoint {
        s,
        t,
        log_value: tower_sum(&ps, s, t, k),
        n_cutoff: k,
        norm_cutoff: pol.norm_cutoff.min(spec.norm_cutoff),
        primes_used: ps.len(),
        tail_bound: tail,
    })
}

fn tower_sum(ps: &[(f64, f64)], s: Complex, t: Complex, k: usize) -> Complex {
    let mut total = Complex::new(0.0, 0.0);
    for &(norm, mult) in ps {
        let ln_n = norm.ln();
        let mut acc = Complex::new(0.0, 0.0);
        let mut b = Complex::new(1.0, 0.0);
        for n in 0..=k {
            if n > 0 {
                b *= (t + (n as f64 - 1.0)) / n as f64;
            }
            if b == Complex::new(0.0, 0.0) {
                break;
            }
            let w = (-(s + n as f64) * ln_n).exp();
            acc += b * ln_one_minus(w);
        }
        total += mult * acc;
    }
    total
}

/// `log Z(s) = Σ_p m_p Σ_{n=0}^{K} log(1 - N(p)^{-s-n})`.
pub fn log_z_classic(s: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<ZetaPoint> {
    check_s("log_Z_classic", s)?;
    pol.validate()?;
    let one = Complex::new(1.0, 0.0);
    let ps = primes(spec, pol);
    let (k, tail) = choose_cutoff(&ps, s.re, one, pol)?;
    let mut total = Complex::new(0.0, 0.0);
    for &(norm, mult) in &ps {
        let ln_n = norm.ln();
        let mut acc = Complex::new(0.0, 0.0);
        for n in 0..=k {
            acc += ln_one_minus((-(s + n as f64) * ln_n).exp());
        }
        total += mult * acc;
    }
    Ok(ZetaPoint {
        s,
        t: one,
        log_value: total,
        n_cutoff: k,
        norm_cutoff: pol.norm_cutoff.min(spec.norm_cutoff),
        primes_used: ps.len(),
        tail_bound: tail,
    })
}

/// `log ζ(s) = -Σ_p m_p log(1 - N(p)^{-s})`.
pub fn log_ruelle(s: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<ZetaPoint> {
    check_s("log_ruelle", s)?;
    pol.validate()?;
    let ps = primes(spec, pol);
    let mut total = Complex::new(0.0, 0.0);
    for &(norm, mult) in &ps {
        total -= mult * ln_one_minus((-s * norm.ln()).exp());
    }
    Ok(ZetaPoint {
        s,
        t: Complex::new(0.0, 0.0),
        log_value: total,
        n_cutoff: 0,
        norm_cutoff: pol.norm_cutoff.min(spec.norm_cutoff),
        primes_used: ps.len(),
        tail_bound: 0.0,
    })
}

/// `log Z^(r)(s)` through `Z^(r)(s) = Z(s, r)`.
pub fn log_z_rank(s: Complex, r: u32, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<ZetaPoint> {
    if r == 0 {
        return Err(Error::Invariant("rank must be at least 1".into()));
    }
    log_z2(s, Complex::new(r as f64, 0.0), spec, pol)
}

/// `log Z^(r)(s) = Σ_{n_1..n_{r-1} >= 0} log Z(s + n_1 + ... + n_{r-1})`
/// summed literally, for `r <= 3`. The outer indices run while
/// `n_1 + ... + n_{r-1}` stays within the tower length that
/// [`log_z_rank`] would use.
pub fn log_z_rank_nested(s: Complex, r: u32, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<ZetaPoint> {
    if !(1..=3).contains(&r) {
        return Err(Error::Invariant(format!("nested evaluation supports rank 1..=3, got {r}")));
    }
    let reference = log_z_rank(s, r, spec, pol)?;
    let k = reference.n_cutoff;
    let inner = |shift: usize| log_z_classic(s + shift as f64, spec, pol);
    let mut total = Complex::new(0.0, 0.0);
    let mut tail = reference.tail_bound;
    match r {
        1 => {
            let v = inner(0)?;
            total = v.log_value;
            tail = v.tail_bound;
        }
        2 => {
            for n1 in 0..=k {
                let v = inner(n1)?;
                total += v.log_value;
                tail += v.tail_bound;
            }
        }
        _ => {
            for n1 in 0..=k {
                for n2 in 0..=(k - n1) {
                    let v = inner(n1 + n2)?;
                    total += v.log_value;
                    tail += v.tail_bound;
                }
            }
        }
    }
    Ok(ZetaPoint {
        log_value: total,
        tail_bound: tail,
        ..reference
    })
}

/// Value of `∂_s^{m+1} log Z(s, t)` with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivValue {
    pub value: Complex,
    /// Bound on the powers of listed primitives beyond the norm cutoff.
    pub tail_bound: f64,
    pub classes_used: usize,
}

/// `∂_s^{m+1} log Z(s, t) = Σ_{γ hyperbolic} log N(δ_γ) (-log N(γ))^m
/// (1 - N(γ)^{-1})^{-t} N(γ)^{-s}`, summed over every entry (primitive and
/// powers) below the cutoff. The spectrum must be closed under powers.
pub fn logderiv_z2(s: Complex, t: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy, m: u32) -> Result<LogDerivValue> {
    check_s("logderiv_Z2", s)?;
    pol.validate()?;
    check_power_closed(spec)?;
    let cutoff = pol.norm_cutoff.min(spec.norm_cutoff);
    let term = |norm: f64, prim: f64| -> Complex {
        let l = norm.ln();
        let base = ln_one_minus(Complex::new(1.0 / norm, 0.0));
        prim.ln() * (-l).powi(m as i32) * (-t * base - s * l).exp()
    };
    let mut value = Complex::new(0.0, 0.0);
    let mut used = 0;
    for e in spec.entries.iter().filter(|e| e.norm <= cutoff) {
        value += e.multiplicity as f64 * term(e.norm, e.primitive_norm);
        used += 1;
    }
    let mut tail_bound = 0.0;
    for p in spec.primitives().filter(|e| e.norm <= cutoff) {
        // first missing power, then a geometric bound on the rest
        let mut j = 1;
        while p.norm.powi(j) <= cutoff {
            j += 1;
        }
        let first = term(p.norm.powi(j), p.norm).norm();
        let ratio = p.norm.powf(-s.re) * ((j + 1) as f64 / j as f64).powi(m as i32) * (1.0 - 1.0 / p.norm).powf(-t.re.abs());
        tail_bound += p.multiplicity as f64 * if ratio < 1.0 { first / (1.0 - ratio) } else { f64::INFINITY };
    }
    Ok(LogDerivValue {
        value,
        tail_bound,
        classes_used: used,
    })
}

/// `|log Z(s,t) - log Z(s,t+1) + log Z(s+1,t+1)|` with one tower length
/// for all three products, and the sum of their tail bounds.
pub fn ladder_residual(s: Complex, t: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<(f64, f64)> {
    let shared = match pol.n_cutoff {
        Some(k) => k,
        None => {
            let a = tower_cutoff(s, t, spec, pol)?.0;
            let b = tower_cutoff(s, t + 1.0, spec, pol)?.0;
            let c = tower_cutoff(s + 1.0, t + 1.0, spec, pol)?.0;
            a.max(b).max(c)
        }
    };
    let fixed = TruncationPolicy {
        n_cutoff: Some(shared),
        ..*pol
    };
    let a = log_z2(s, t, spec, &fixed)?;
    let b = log_z2(s, t + 1.0, spec, &fixed)?;
    let c = log_z2(s + 1.0, t + 1.0, spec, &fixed)?;
    Ok((
        (a.log_value - b.log_value + c.log_value).norm(),
        a.tail_bound + b.tail_bound + c.tail_bound,
    ))
}

/// `|log Z(s, t+1) - Σ_{n=0}^{K} log Z(s+n, t)|` with `K` the tower length
/// of `Z(s, t+1)`, and the combined tail bound.
pub fn second_ladder_residual(s: Complex, t: Complex, spec: &LengthSpectrum, pol: &TruncationPolicy) -> Result<(f64, f64)> {
    let lhs = log_z2(s, t + 1.0, spec, pol)?;
    let mut sum = Complex::new(0.0, 0.0);
    let mut tail = lhs.tail_bound;
    for n in 0..=lhs.n_cutoff {
        let v = log_z2(s + n as f64, t, spec, pol)?;
        sum += v.log_value;
        tail += v.tail_bound;
    }
    // omitted shifts n > K: each at most the (s+n, t) tail-free size
    let ps = primes(spec, pol);
    let omitted = tower_tail(&ps, s.re, t + 1.0, lhs.n_cutoff);
    Ok(((lhs.log_value - sum).norm(), tail + omitted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::binomial_real;
    use crate::geodesic::synthesize_powers;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn four() -> LengthSpectrum {
        LengthSpectrum::from_primitives(&[(4.0, 1)], 2, 1e6).unwrap()
    }

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn classic_single_prime() {
        let v = log_z_classic(c(2.0, 0.0), &four(), &pol()).unwrap();
        let direct: f64 = (0..60).map(|n| (1.0 - 4f64.powi(-2 - n)).ln()).sum();
        assert!((v.log_value.re - direct).abs() < 1e-14);
        assert!((v.log_value.re + 0.085_503_369_702_078_95).abs() < 1e-14);
        assert!(v.tail_bound <= 1e-14);
        let empty = LengthSpectrum::empty(2, 10.0);
        assert_eq!(log_z_classic(c(2.0, 0.0), &empty, &pol()).unwrap().log_value, c(0.0, 0.0));
        let double = LengthSpectrum::from_primitives(&[(4.0, 2)], 2, 1e6).unwrap();
        assert_eq!(log_z_classic(c(2.0, 0.0), &double, &pol()).unwrap().log_value, 2.0 * v.log_value);
    }

    #[test]
    fn ruelle_values() {
        let v = log_ruelle(c(1.0, 0.0), &four(), &pol()).unwrap();
        assert!((v.log_value.re + (0.75f64).ln()).abs() < 1e-15);
        let s = c(2.0, 0.3);
        let lhs = log_ruelle(s, &four(), &pol()).unwrap().log_value;
        let rhs = log_z_classic(s + 1.0, &four(), &pol()).unwrap().log_value - log_z_classic(s, &four(), &pol()).unwrap().log_value;
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn domain_checked() {
        assert!(matches!(log_z2(c(0.9, 0.0), c(1.0, 0.0), &four(), &pol()), Err(Error::Domain { .. })));
        assert!(log_z2(c(1.0, 0.0), c(1.0, 0.0), &four(), &pol()).is_ok());
    }

    #[test]
    fn interpolation_points() {
        let s = c(2.0, 0.5);
        let sp = LengthSpectrum::from_primitives(&[(4.0, 1), (9.5, 2)], 2, 1e6).unwrap();
        let z0 = log_z2(s, c(0.0, 0.0), &sp, &pol()).unwrap().log_value;
        assert!((z0 + log_ruelle(s, &sp, &pol()).unwrap().log_value).norm() < 1e-15);
        let z1 = log_z2(s, c(1.0, 0.0), &sp, &pol()).unwrap();
        assert_eq!(z1.log_value, log_z_classic(s, &sp, &pol()).unwrap().log_value);
    }

    #[test]
    fn negative_integer_t_is_finite() {
        let s = c(2.0, 0.0);
        let v = log_z2(s, c(-2.0, 0.0), &four(), &pol()).unwrap();
        assert_eq!(v.tail_bound, 0.0);
        let direct: f64 = (0..=2)
            .map(|n| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial_real(2, n as u64) * (1.0 - 4f64.powi(-2 - n)).ln()
            })
            .sum();
        assert!((v.log_value.re - direct).abs() < 1e-15);
        for m in 0..4u64 {
            let lhs = log_z2(s, c(-(m as f64), 0.0), &four(), &pol()).unwrap().log_value;
            let mut rhs = c(0.0, 0.0);
            for n in 0..=m {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                rhs += sign * binomial_real(m, n) * log_ruelle(s + n as f64, &four(), &pol()).unwrap().log_value;
            }
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_two_nested() {
        let s = c(2.0, 0.0);
        let a = log_z_rank(s, 2, &four(), &pol()).unwrap();
        let b = log_z_rank_nested(s, 2, &four(), &pol()).unwrap();
        assert!((a.log_value - b.log_value).norm() < 1e-10);
        let a3 = log_z_rank(s, 3, &four(), &pol()).unwrap();
        let b3 = log_z_rank_nested(s, 3, &four(), &pol()).unwrap();
        assert!((a3.log_value - b3.log_value).norm() < 1e-10);
        assert_eq!(log_z_rank(s, 1, &four(), &pol()).unwrap().log_value, log_z_classic(s, &four(), &pol()).unwrap().log_value);
    }

    #[test]
    fn ladders() {
        let (r, _) = ladder_residual(c(2.0, 0.0), c(1.0, 0.0), &four(), &TruncationPolicy::with_n_cutoff(60)).unwrap();
        assert!(r <= 1e-12);
        let two = LengthSpectrum::from_primitives(&[(4.0, 1), (9.0, 1)], 2, 1e6).unwrap();
        let (r, _) = ladder_residual(c(3.0, 0.0), c(0.5, 0.0), &two, &pol()).unwrap();
        assert!(r <= 1e-12);
        let (r, _) = ladder_residual(c(3.0, 0.0), c(0.5, 0.0), &LengthSpectrum::empty(2, 10.0), &pol()).unwrap();
        assert_eq!(r, 0.0);
        let (r, bound) = second_ladder_residual(c(2.0, 0.1), c(0.4, 0.0), &two, &pol()).unwrap();
        assert!(r <= bound + 1e-14, "{r} > {bound}");
    }

    #[test]
    fn logderiv_needs_powers() {
        let s = c(2.0, 0.0);
        let prim = LengthSpectrum::from_primitives(&[(4.0, 1)], 2, 100.0).unwrap();
        assert!(matches!(logderiv_z2(s, c(1.0, 0.0), &prim, &pol(), 0), Err(Error::MissingPowers(_))));
        let full = synthesize_powers(&prim);
        let v = logderiv_z2(s, c(1.0, 0.0), &full, &pol(), 0).unwrap();
        let direct: f64 = (1..=3).map(|j| 4f64.ln() / (1.0 - 4f64.powi(-j)) * 4f64.powi(-2 * j)).sum();
        assert!((v.value.re - direct).abs() < 1e-15);
        // the missing powers 4^4, 4^5, ... are covered by the bound
        let rest: f64 = (4..60).map(|j| 4f64.ln() / (1.0 - 4f64.powi(-j)) * 4f64.powi(-2 * j)).sum();
        assert!(rest <= v.tail_bound);
    }

    #[test]
    fn logderiv_matches_difference_quotient() {
        let sp = synthesize_powers(&LengthSpectrum::from_primitives(&[(4.0, 1), (7.3, 1)], 2, 1e9).unwrap());
        let (s, t) = (c(2.3, 0.2), c(0.6, 0.0));
        let h = 1e-4;
        let f = |d: f64| log_z2(s + d, t, &sp, &pol()).unwrap().log_value;
        let fd = (f(h) - f(-h)) / (2.0 * h);
        let v = logderiv_z2(s, t, &sp, &pol(), 0).unwrap();
        assert!((fd - v.value).norm() < 1e-7 + v.tail_bound, "{fd} vs {}", v.value);
        let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let v1 = logderiv_z2(s, t, &sp, &pol(), 1).unwrap();
        assert!((d2 - v1.value).norm() < 1e-5);
    }
}
