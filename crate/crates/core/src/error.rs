use std::fmt;

use num_complex::Complex64;

/// Errors raised by the numerical routines and the file readers.
///
/// Poles and zeros are always reported through these variants; no routine
/// returns a silent `inf` or `NaN` for a point it knows to be singular.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: Point },

    #[error("{function}: argument {at} is outside the supported domain ({reason})")]
    Domain {
        function: &'static str,
        at: Point,
        reason: String,
    },

    #[error("{function}: {reason}")]
    Convergence {
        function: &'static str,
        reason: String,
    },

    #[error("{function}: tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    TailBound {
        function: &'static str,
        bound: f64,
        tolerance: f64,
    },

    #[error("matrix with trace {trace} is not hyperbolic")]
    NonHyperbolic { trace: f64 },

    #[error("zero of {function} at {at}")]
    ZeroArgument { function: &'static str, at: Point },

    #[error("spectrum is not power-closed: {0}")]
    MissingPowers(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that describe a singular or out-of-domain evaluation
    /// point rather than malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Domain { .. }
                | Error::Convergence { .. }
                | Error::TailBound { .. }
                | Error::ZeroArgument { .. }
                | Error::NonHyperbolic { .. }
                | Error::MissingPowers(_)
        )
    }

    pub(crate) fn pole(function: &'static str, at: impl Into<Point>) -> Self {
        Error::Pole {
            function,
            at: at.into(),
        }
    }

    pub(crate) fn domain(function: &'static str, at: impl Into<Point>, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            at: at.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn convergence(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Convergence {
            function,
            reason: reason.into(),
        }
    }
}

/// Evaluation point carried by an error, printed as `re+imi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub Complex64);

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point(z)
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point(Complex64::new(x, 0.0))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.im == 0.0 {
            write!(f, "{}", z.re)
        } else if z.im < 0.0 {
            write!(f, "{}-{}i", z.re, -z.im)
        } else {
            write!(f, "{}+{}i", z.re, z.im)
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
