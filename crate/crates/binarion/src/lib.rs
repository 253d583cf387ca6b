//! Verified numerics for the two-dimensional operator algebras `L = xI + yE`.
//!
//! The generator `E` squares to `eps I` with `eps` in `{+1, -1, 0}`; the three
//! choices give the split (hyperbolic), complex (elliptic), and parabolic
//! variants of one plane algebra. A single value type, [`Binarion`], carries
//! its signature, and every kernel is written against the shared product rule
//! `(x1 x2 + eps y1 y2) I + (x1 y2 + x2 y1) E`.
//!
//! Modules:
//! - [`algebra`]: value type, ring operations, conjugation, determinant, spectrum
//! - [`structure`]: determinant regions, zero divisors, fixed lines, geometric series
//! - [`functions`]: exp, ln, sin, cos, sqrt, hyperbolic polar form, principal argument
//! - [`matrix`]: faithful 2x2 representations, kept elementary to serve as an oracle
//! - [`signal`]: sampled 2-periodic signals on which `E` acts as the unit shift
//! - [`field`]: finite-difference analyticity tests for plane fields
//! - [`contour`]: line integrals of algebra-valued fields along plane contours
//! - [`expr`]: small expression language over constants `I` and `E`
//! - [`fields`]: named plane fields shared by the CLI and the C interface

pub mod algebra;
pub mod contour;
pub mod error;
pub mod expr;
pub mod field;
pub mod fields;
pub mod fmt;
pub mod functions;
pub mod matrix;
pub mod signal;
pub mod structure;

pub use algebra::{Binarion, Eigenvalue, NormKind, Signature, Spectrum};
pub use error::Error;
