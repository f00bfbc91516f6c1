//! Numerics for the two-variable Selberg zeta function of a compact
//! hyperbolic surface and the special functions around it.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod binomial_zeta;
pub mod complex_core;
pub mod completion;
mod error;
pub mod geodesic;
pub mod products;
pub mod spectral;
pub mod suite;

pub use complex_core::{Complex, SeriesControl};
pub use error::{Error, Point, Result};
