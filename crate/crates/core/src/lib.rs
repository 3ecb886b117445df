//! Hypergeometric Lévy processes.
//!
//! The four-parameter family whose Laplace exponent is a ratio of four gamma
//! functions, over the admissible parameter regimes A1 to A4:
//!
//! - [`params`]: parameter validation and regime classification
//! - [`exponent`]: the Laplace exponent, killing rate and growth order
//! - [`lattice`]: roots and poles of the exponent, interlacement and the
//!   product-to-mixture coefficient machinery
//! - [`wiener_hopf`]: ascending and descending Wiener–Hopf factors
//! - [`levy_measure`]: closed-form and exponential-mixture Lévy densities
//! - [`ladder`]: ascending ladder height densities in regime A4
//!
//! ```
//! use hyplevy::{params::HypParams, exponent};
//!
//! let p = HypParams::new(0.9, 0.5, 0.2, 0.3).unwrap();
//! let q = exponent::killing_rate(&p);
//! assert!((q - 0.060_435_555_913_883_82).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod error;
pub mod exponent;
pub mod ladder;
pub mod lattice;
pub mod levy_measure;
pub mod params;
pub mod quadrature;
pub mod special;
pub mod wiener_hopf;

pub use error::{Error, Result};
pub use special::ComplexValue;
