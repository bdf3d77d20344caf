//! Rational approximation in the exterior Hardy space of the unit circle.
//!
//! The library targets functions `𝔉 = f_μ + r`, the Cauchy transform of a
//! complex measure on a segment `[a, b] ⊂ (−1, 1)` plus a rational part. It
//! locates critical points of the squared `L²` error over rational functions
//! of degree `n`, checks their interpolation properties against multipoint
//! Padé approximants, and tests local minimality through Hankel singular
//! values.
//!
//! | module | contents |
//! |--------|----------|
//! | [`hardy`] | polynomials, Laurent tails, projection onto `V_q`, winding numbers |
//! | [`cauchy`] | measures, targets, the map `φ`, Szegő functions |
//! | [`pade`] | multipoint Padé approximants and interpolation schemes |
//! | [`critical`] | error function, gradient, Hessian, critical-point solver |
//! | [`certify`] | comparison criterion, Hankel bounds, asymptotics diagnostics |
//! | [`cli`] | experiment configs, run records and the `ratl2` commands |
// Range checks are written `!(x < y)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cauchy;
pub mod certify;
pub mod cli;
pub mod config;
pub mod critical;
pub mod error;
pub mod hardy;
pub mod pade;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
