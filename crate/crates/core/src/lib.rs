//! Orthogonal polynomials on the unit circle.
//!
//! The crate works with finitely supported Verblunsky coefficient sequences,
//! for which every multi-fold series below terminates. It provides the monic
//! polynomials and four independent formulas for their coefficients, the
//! moment transforms, Bernstein–Szegő measures with trapezoid quadrature,
//! logarithmic moments in closed and general form, explicit sum rules and
//! the partition combinatorics behind the general logarithmic moment.

#![allow(clippy::needless_range_loop)]

pub mod general_wm;
pub mod logmoments;
pub mod measures;
pub mod moments;
pub mod opuc_core;
pub mod sample;
pub mod sumrules;
pub mod verblunsky;

mod error;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use verblunsky::VerblunskySequence;
