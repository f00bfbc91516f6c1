//! Length spectra of co-compact Fuchsian groups and Laplacian eigenvalue
//! lists: data types, enumeration of hyperbolic conjugacy classes from
//! generator matrices, primitive/power bookkeeping and JSON-lines files.
//!
//! Both `γ` and `γ^{-1}` are counted as separate classes, so a symmetric
//! generator set produces every norm at least twice.

mod enumerate;
mod io;
mod matrix;

pub use enumerate::{
    check_power_closed, class_norm, enumerate_classes, enumerate_classes_with_threads, primitive_decomposition,
    synthesize_powers, Enumeration,
};
pub use io::{load_eigen, load_spectrum, read_eigen, read_spectrum, save_eigen, save_spectrum, write_eigen, write_spectrum};
pub use matrix::Matrix2;

use crate::complex_core::Complex;
use crate::error::{Error, Result};

/// Generators of a torsion-free co-compact Fuchsian group and its genus.
///
/// The generator count is not tied to the genus: test groups routinely use
/// one or two hyperbolic generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    generators: Vec<Matrix2>,
    genus: u32,
}

impl GroupPresentation {
    pub fn new(generators: Vec<Matrix2>, genus: u32) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if (g.det() - 1.0).abs() > 1e-12 {
                return Err(Error::Invariant(format!(
                    "generator {i} has determinant {} (expected 1)",
                    g.det()
                )));
            }
            if g.trace().abs() <= 2.0 {
                return Err(Error::NonHyperbolic { trace: g.trace() });
            }
        }
        Ok(GroupPresentation { generators, genus })
    }

    pub fn generators(&self) -> &[Matrix2] {
        &self.generators
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The same group with every generator replaced by `P g P^{-1}`.
    pub fn conjugated(&self, p: &Matrix2) -> Result<Self> {
        let inv = p.inverse();
        let gens = self.generators.iter().map(|g| p.mul(g).mul(&inv)).collect();
        GroupPresentation::new(gens, self.genus)
    }
}

/// One hyperbolic conjugacy class (or a set of classes sharing a norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicEntry {
    pub norm: f64,
    pub length: f64,
    pub multiplicity: u64,
    pub primitive: bool,
    pub primitive_norm: f64,
    pub power: u32,
}

impl GeodesicEntry {
    /// A primitive class of the given norm.
    pub fn primitive(norm: f64, multiplicity: u64) -> Self {
        GeodesicEntry {
            norm,
            length: norm.ln(),
            multiplicity,
            primitive: true,
            primitive_norm: norm,
            power: 1,
        }
    }

    /// The `power`-th power of a primitive class of norm `primitive_norm`.
    pub fn power_of(primitive_norm: f64, power: u32, multiplicity: u64) -> Self {
        let norm = primitive_norm.powi(power as i32);
        GeodesicEntry {
            norm,
            length: norm.ln(),
            multiplicity,
            primitive: power == 1,
            primitive_norm,
            power,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.norm > 1.0) || !self.norm.is_finite() {
            return Err(Error::Invariant(format!("norm {} is not > 1", self.norm)));
        }
        if !(self.primitive_norm > 1.0) {
            return Err(Error::Invariant(format!("primitive norm {} is not > 1", self.primitive_norm)));
        }
        if self.multiplicity == 0 || self.power == 0 {
            return Err(Error::Invariant("multiplicity and power must be positive".into()));
        }
        if self.primitive != (self.power == 1) {
            return Err(Error::Invariant(format!(
                "primitive flag {} inconsistent with power {}",
                self.primitive, self.power
            )));
        }
        let expect = self.primitive_norm.ln() * self.power as f64;
        if (self.length - expect).abs() > 1e-9 * expect {
            return Err(Error::Invariant(format!(
                "norm {} is not primitive norm {} to the power {}",
                self.norm, self.primitive_norm, self.power
            )));
        }
        Ok(())
    }
}

/// Entries sorted by norm, with the norm bound below which the list is
/// claimed complete.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    pub entries: Vec<GeodesicEntry>,
    pub genus: u32,
    pub norm_cutoff: f64,
}

impl LengthSpectrum {
    /// Builds a spectrum, sorting entries by norm and checking invariants.
    pub fn new(mut entries: Vec<GeodesicEntry>, genus: u32, norm_cutoff: f64) -> Result<Self> {
        for e in &entries {
            e.validate()?;
        }
        entries.sort_by(|a, b| a.norm.total_cmp(&b.norm).then(a.power.cmp(&b.power)));
        Ok(LengthSpectrum {
            entries,
            genus,
            norm_cutoff,
        })
    }

    pub fn empty(genus: u32, norm_cutoff: f64) -> Self {
        LengthSpectrum {
            entries: Vec::new(),
            genus,
            norm_cutoff,
        }
    }

    /// Single primitive classes `(norm, multiplicity)`.
    pub fn from_primitives(prims: &[(f64, u64)], genus: u32, norm_cutoff: f64) -> Result<Self> {
        LengthSpectrum::new(
            prims.iter().map(|&(n, m)| GeodesicEntry::primitive(n, m)).collect(),
            genus,
            norm_cutoff,
        )
    }

    pub fn primitives(&self) -> impl Iterator<Item = &GeodesicEntry> {
        self.entries.iter().filter(|e| e.primitive)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_norm(&self) -> Option<f64> {
        self.entries.first().map(|e| e.norm)
    }

    /// Every multiplicity multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            e.multiplicity *= k;
        }
        out
    }
}

/// A Laplacian eigenvalue with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenEntry {
    pub lambda: f64,
    pub multiplicity: u64,
}

/// Eigenvalues sorted ascending. When `0` is present it is the constant
/// mode and must have multiplicity one.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    pub entries: Vec<EigenEntry>,
    pub genus: u32,
}

impl EigenSpectrum {
    pub fn new(mut entries: Vec<EigenEntry>, genus: u32) -> Result<Self> {
        for e in &entries {
            if !(e.lambda >= 0.0) || !e.lambda.is_finite() {
                return Err(Error::Invariant(format!("eigenvalue {} is negative", e.lambda)));
            }
            if e.multiplicity == 0 {
                return Err(Error::Invariant("eigenvalue multiplicity must be positive".into()));
            }
            if e.lambda == 0.0 && e.multiplicity != 1 {
                return Err(Error::Invariant("eigenvalue 0 must have multiplicity 1".into()));
            }
        }
        entries.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        if entries.windows(2).any(|w| w[0].lambda == 0.0 && w[1].lambda == 0.0) {
            return Err(Error::Invariant("eigenvalue 0 listed twice".into()));
        }
        Ok(EigenSpectrum { entries, genus })
    }

    /// Eigenvalues with multiplicity one each.
    pub fn from_values(lambdas: &[f64], genus: u32) -> Result<Self> {
        EigenSpectrum::new(
            lambdas
                .iter()
                .map(|&lambda| EigenEntry {
                    lambda,
                    multiplicity: 1,
                })
                .collect(),
            genus,
        )
    }

    pub fn empty(genus: u32) -> Self {
        EigenSpectrum {
            entries: Vec::new(),
            genus,
        }
    }

    pub fn has_zero_mode(&self) -> bool {
        self.entries.first().is_some_and(|e| e.lambda == 0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(r_j, m_j)` for every entry.
    pub fn spectral_params(&self) -> Vec<(Complex, u64)> {
        self.entries
            .iter()
            .map(|e| (crate::spectral::r_from_lambda_unchecked(e.lambda), e.multiplicity))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_validation() {
        assert!(GeodesicEntry::primitive(4.0, 1).validate().is_ok());
        assert!(GeodesicEntry::primitive(0.5, 1).validate().is_err());
        assert!(GeodesicEntry::power_of(4.0, 3, 2).validate().is_ok());
        let mut e = GeodesicEntry::power_of(4.0, 2, 1);
        e.primitive = true;
        assert!(e.validate().is_err());
    }

    #[test]
    fn spectrum_sorted_on_construction() {
        let s = LengthSpectrum::from_primitives(&[(9.0, 1), (4.0, 2)], 2, 100.0).unwrap();
        assert_eq!(s.entries[0].norm, 4.0);
        assert_eq!(s.min_norm(), Some(4.0));
    }

    #[test]
    fn eigen_invariants() {
        assert!(EigenSpectrum::from_values(&[2.0, 0.0, 0.3], 2).unwrap().has_zero_mode());
        assert!(EigenSpectrum::from_values(&[-0.1], 2).is_err());
        let dup = vec![EigenEntry {
            lambda: 0.0,
            multiplicity: 2,
        }];
        assert!(EigenSpectrum::new(dup, 2).is_err());
    }

    #[test]
    fn presentation_checks() {
        let m = Matrix2::new(2.0, 1.0, 1.0, 1.0);
        assert!(GroupPresentation::new(vec![m], 2).is_ok());
        let parabolic = Matrix2::new(1.0, 1.0, 0.0, 1.0);
        assert!(matches!(
            GroupPresentation::new(vec![parabolic], 2),
            Err(Error::NonHyperbolic { .. })
        ));
        let bad_det = Matrix2::new(2.0, 1.0, 1.0, 2.0);
        assert!(GroupPresentation::new(vec![bad_det], 2).is_err());
    }
}
