//! Pushforward spectra of periodic unicritical polynomials `z^D + c`.
//!
//! The crate has an exact half and a floating-point half. The exact half
//! ([`poly`], [`gleason`], [`units`]) builds Gleason polynomials over the
//! integers and produces resultant certificates. The numeric half
//! ([`dynamics`], [`spectrum`], [`equidist`]) enumerates centers, computes
//! critical-orbit spectra and checks them against the exact data.

// Negated comparisons double as NaN rejection throughout the numerics.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod dd;
pub mod dynamics;
pub mod equidist;
pub mod error;
pub mod gleason;
pub mod output;
pub mod poly;
pub mod roots;
pub mod spectrum;
pub mod units;

pub use dd::{Dd, Real};
pub use error::{Error, Result};
pub use poly::{BigIntScalar, BivarPoly, IntPoly};

/// Complex number at baseline (53-bit) precision.
pub type C64 = num_complex::Complex<f64>;
/// Complex number at extended (106-bit) precision.
pub type CDd = num_complex::Complex<Dd>;
