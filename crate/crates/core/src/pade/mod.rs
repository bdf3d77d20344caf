//! Multipoint Padé approximants, interpolation schemes and the products
//! `R_n` describing their error.

mod admissibility;
mod approximant;
mod blaschke;
mod scheme;

pub use admissibility::{admissibility_report, sliced_transport, AdmissibilityReport};
pub use approximant::{build_pade, build_pade_doubled, common_roots, PadeApproximant};
pub use blaschke::{blaschke_product_points, blaschke_product_rn, blaschke_product_rn_boundary};
pub use scheme::{InterpolationScheme, InterpolationSet, Provenance, INFINITY_CUTOFF};
