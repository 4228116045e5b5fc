//! Exact-arithmetic construction, verification and classification of
//! `(g, K)`-modules of `SU(2,1)`.
//!
//! Everything is computed over `Q(i)` with no rounding: [`scalar`] provides
//! the field, [`algebra`] the Lie algebra `sl(3, C)`, [`ktype`] the K-type
//! lattice, [`coefficients`] the action coefficients, [`module`] truncated
//! modules, [`verify`] brute-force relation checks, [`unitarity`] invariant
//! forms, [`classifier`] the unitary families, [`sl2`] the `SL(2, R)` model
//! case and [`render`] spectrum pictures.

pub mod algebra;
pub mod classifier;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod ktype;
pub mod module;
pub mod render;
pub mod scalar;
pub mod sl2;
pub mod unitarity;
pub mod verify;

pub use error::{Result, Su21Error};
