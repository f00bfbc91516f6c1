//! Finite-spectrum zeta sums `ξ^(±)` and the regularized determinants built
//! from them. For a finite eigenvalue list `ξ^(±)` is holomorphic at
//! `z = 0`, so `Res_{z=0} ξ/z²` is just `∂_z ξ` at `0`, a finite sum of
//! two-variable log-gammas.

use crate::binomial_zeta::{log_gamma2, zeta_t};
use crate::complex_core::{Complex, SeriesControl};
use crate::error::{Error, Result};
use crate::geodesic::EigenSpectrum;

const I: Complex = Complex::new(0.0, 1.0);

/// Which square root `± sqrt(1/4 - Δ)`, i.e. argument `s - 1/2 ± i r_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

fn arguments(s: Complex, eig: &EigenSpectrum, sign: Sign) -> impl Iterator<Item = (Complex, f64)> + '_ {
    eig.spectral_params()
        .into_iter()
        .map(move |(r, m)| (s - 0.5 + sign.value() * I * r, m as f64))
}

/// `ξ^(±)_t(z, s) = Σ_j m_j ζ_t(z, s - 1/2 ± i r_j)`.
pub fn xi_pm(z: Complex, s: Complex, t: Complex, eig: &EigenSpectrum, sign: Sign, ctrl: &SeriesControl) -> Result<Complex> {
    let mut acc = Complex::new(0.0, 0.0);
    for (a, m) in arguments(s, eig, sign) {
        acc += m * zeta_t(z, a, t, ctrl)?;
    }
    Ok(acc)
}

/// `log detΓ(s - 1/2 ± sqrt(1/4 - Δ), t) = Σ_j m_j log Γ(s - 1/2 ± i r_j, t)`.
pub fn log_det_gamma_spec(s: Complex, t: Complex, eig: &EigenSpectrum, sign: Sign, ctrl: &SeriesControl) -> Result<Complex> {
    let mut acc = Complex::new(0.0, 0.0);
    for (a, m) in arguments(s, eig, sign) {
        acc += m * log_gamma2(a, t, ctrl)?;
    }
    Ok(acc)
}

/// `log detS(s - 1/2 ± sqrt(1/4 - Δ), n)`, assembled literally as
/// `-log detΓ(s - 1/2 ± ·, n) + (-1)^n log detΓ(n - s - 1/2 ∓ ·, n)`.
///
/// Per eigenvalue this is not the multiple sine of `s - 1/2 ± i r_j`: the
/// reflected argument is `n - s - 1/2 ∓ i r_j`, one less than
/// `n - (s - 1/2 ± i r_j)`. For `n = 1` and `r = 0` the term equals
/// `log(-2a sin πa)` with `a = s - 1/2`.
pub fn log_det_sine_spec(s: Complex, n: i64, eig: &EigenSpectrum, sign: Sign, ctrl: &SeriesControl) -> Result<Complex> {
    let nn = Complex::new(n as f64, 0.0);
    let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-log_det_gamma_spec(s, nn, eig, sign, ctrl)? + parity * log_det_gamma_spec(nn - s, nn, eig, sign.opposite(), ctrl)?)
}

/// `log det(Δ + s(1-s)) = Σ_j m_j log(λ_j + s(1-s))`.
///
/// The displayed spectral zeta starts at `j = 1`, so the zero mode is
/// skipped unless `include_zero_mode` is set; with it the determinant
/// picks up the factor `s(1-s)`.
pub fn log_det_laplacian(s: Complex, eig: &EigenSpectrum, include_zero_mode: bool) -> Result<Complex> {
    let x = s * (1.0 - s);
    let mut acc = Complex::new(0.0, 0.0);
    for e in &eig.entries {
        if e.lambda == 0.0 && !include_zero_mode {
            continue;
        }
        let w = x + e.lambda;
        if w.norm() <= 1e-14 * (e.lambda + x.norm()).max(1.0) {
            return Err(Error::ZeroArgument {
                function: "log_det_laplacian",
                at: s.into(),
            });
        }
        acc += e.multiplicity as f64 * w.ln();
    }
    Ok(acc)
}

/// Residuals of the determinant shift relation
/// `detΓ(s-1/2 ± ·, t+1) / detΓ(s+1/2 ± ·, t+1) = detΓ(s-1/2 ∘ ·, t)`
/// for every left sign `±` and right sign `∘`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftReport {
    /// Rows indexed by the left sign (`Plus`, `Minus`), columns by the
    /// right sign.
    pub residuals: [[f64; 2]; 2],
}

impl ShiftReport {
    pub fn residual(&self, left: Sign, right: Sign) -> f64 {
        let idx = |s: Sign| if s == Sign::Plus { 0 } else { 1 };
        self.residuals[idx(left)][idx(right)]
    }

    /// The literal display: either left sign against a `+` right-hand side.
    pub fn literal(&self) -> [f64; 2] {
        [self.residuals[0][0], self.residuals[1][0]]
    }

    /// Sign pairs whose residual is below `tol`.
    pub fn balancing(&self, tol: f64) -> Vec<(Sign, Sign)> {
        let signs = [Sign::Plus, Sign::Minus];
        let mut out = Vec::new();
        for l in signs {
            for r in signs {
                if self.residual(l, r) <= tol {
                    out.push((l, r));
                }
            }
        }
        out
    }
}

pub fn shift_relation_report(s: Complex, t: Complex, eig: &EigenSpectrum, ctrl: &SeriesControl) -> Result<ShiftReport> {
    let mut residuals = [[0.0; 2]; 2];
    let signs = [Sign::Plus, Sign::Minus];
    let mut rhs = [Complex::new(0.0, 0.0); 2];
    for (j, r) in signs.into_iter().enumerate() {
        rhs[j] = log_det_gamma_spec(s, t, eig, r, ctrl)?;
    }
    for (i, l) in signs.into_iter().enumerate() {
        let lhs = log_det_gamma_spec(s, t + 1.0, eig, l, ctrl)? - log_det_gamma_spec(s + 1.0, t + 1.0, eig, l, ctrl)?;
        for j in 0..2 {
            residuals[i][j] = (lhs - rhs[j]).norm();
        }
    }
    Ok(ShiftReport { residuals })
}
