//! Class-𝕄 measures, Cauchy transforms and the conformal geometry of
//! `ℂ̄ ∖ [a, b]`.

mod chebyshev;
mod conformal;
mod expr;
mod measure;
mod input;
mod szego;
mod target;
mod unwrap;

pub use chebyshev::{chebyshev_roots, clenshaw, clenshaw_with_derivative, coeffs_from_gauss, effective_length, gauss_nodes, t_monomial_table, t_values};
pub use conformal::{joukowski_inverse_phi, w_branch, Segment, Side};
pub use expr::Expr;
pub use measure::{Density, MeasureM};
pub use input::{DensityInput, PoleInput, TargetInput};
pub use szego::{geometric_mean, szego_function, SzegoData};
pub use target::{eval_cauchy, Pole, RationalPart, TargetFunction};
pub use unwrap::{unwrap_argument, Unwrapped};
