//! Complex special functions shared by the rest of the crate: log-gamma,
//! digamma, Beta, the Hurwitz zeta function with its `z`-derivative,
//! generalized binomial coefficients and real-line quadrature.
//!
//! Everything is double precision. Singular points are reported through
//! [`Error`](crate::Error) values, never as `inf`/`NaN`.

mod binom;
mod gamma;
mod hurwitz;
mod quad;

pub use binom::{binomial_real, gen_binom, shifted_binomial_poly};
pub use gamma::{beta, digamma, gamma, log_beta, log_gamma, EULER_GAMMA};
pub(crate) use gamma::reciprocal_gamma_taylor;
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_with, hurwitz_zeta_zderiv, hurwitz_zeta_zderiv_with};
pub use quad::{integrate, quad_realline, QuadResult, QuadValue};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Controls for series evaluations (direct-sum length, tail tolerance and
/// Euler–Maclaurin correction order).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub tail_tolerance: f64,
    pub euler_maclaurin_order: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 50,
            tail_tolerance: 1e-13,
            euler_maclaurin_order: 8,
        }
    }
}

impl SeriesControl {
    pub const MAX_EM_ORDER: usize = 12;

    pub fn new(max_terms: usize, tail_tolerance: f64, euler_maclaurin_order: usize) -> Result<Self> {
        let ctrl = SeriesControl {
            max_terms,
            tail_tolerance,
            euler_maclaurin_order,
        };
        ctrl.validate()?;
        Ok(ctrl)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::Invariant("max_terms must be positive".into()));
        }
        if !(self.tail_tolerance > 0.0) || !self.tail_tolerance.is_finite() {
            return Err(Error::Invariant("tail_tolerance must be a positive finite number".into()));
        }
        if self.euler_maclaurin_order == 0 || self.euler_maclaurin_order > Self::MAX_EM_ORDER {
            return Err(Error::Invariant(format!(
                "euler_maclaurin_order must lie in 1..={}",
                Self::MAX_EM_ORDER
            )));
        }
        Ok(())
    }
}

/// `B_{2j}` for `j = 1..=13`.
pub(crate) const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// Principal-branch power `w^p = exp(p log w)`.
#[inline]
pub fn cpow(w: Complex, p: Complex) -> Complex {
    (p * w.ln()).exp()
}

/// `log(1 - w)` on the principal branch, accurate for small `|w|`.
pub fn ln_one_minus(w: Complex) -> Complex {
    let re = 0.5 * (w.norm_sqr() - 2.0 * w.re).ln_1p();
    let im = (-w.im).atan2(1.0 - w.re);
    Complex::new(re, im)
}

/// Returns `Some(n)` when `z` is within `tol` of the integer `n`.
pub fn as_integer(z: Complex, tol: f64) -> Option<i64> {
    let r = z.re.round();
    if (z.re - r).abs() <= tol && z.im.abs() <= tol && r.abs() < 9.0e15 {
        Some(r as i64)
    } else {
        None
    }
}

/// True when `z` sits (within `tol`) on one of `0, -1, -2, ...`.
pub fn is_nonpositive_integer(z: Complex, tol: f64) -> bool {
    matches!(as_integer(z, tol), Some(n) if n <= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_one_minus_small_argument() {
        let w = Complex::new(1e-12, -3e-13);
        let v = ln_one_minus(w);
        assert!((v - (-w - w * w / 2.0)).norm() < 1e-27);
        let w = Complex::new(0.3, 0.4);
        assert!((ln_one_minus(w) - (Complex::new(1.0, 0.0) - w).ln()).norm() < 1e-15);
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(50, 1e-12, 8).is_ok());
        assert!(SeriesControl::new(50, 0.0, 8).is_err());
        assert!(SeriesControl::new(50, 1e-12, 13).is_err());
        assert!(SeriesControl::new(0, 1e-12, 8).is_err());
    }

    #[test]
    fn integer_detection() {
        assert_eq!(as_integer(Complex::new(-3.0, 0.0), 1e-14), Some(-3));
        assert_eq!(as_integer(Complex::new(2.5, 0.0), 1e-14), None);
        assert!(is_nonpositive_integer(Complex::new(0.0, 0.0), 1e-14));
        assert!(!is_nonpositive_integer(Complex::new(1.0, 0.0), 1e-14));
        assert!(!is_nonpositive_integer(Complex::new(-1.0, 1e-3), 1e-14));
    }
}
