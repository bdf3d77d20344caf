//! Certification of critical points and diagnostics of Padé asymptotics.
//!
//! A critical point `q` of degree `n` is a nondegenerate local minimum as
//! soon as some `Π` of degree `n − 1` satisfies
//! `|1 − (𝔉 − Π)/(𝔉 − L_q/q)| > 2` on the circle with `wn(𝔉 − Π) = 1 − 2n`.
//! [`check_comparison_criterion`] evaluates both conditions for a candidate
//! `Π`, and [`build_comparison_scheme`] produces the candidate used in the
//! uniqueness argument. The Hankel operator with symbol
//! `s_q = L_q/(o_q q q̃)` gives the same information through its `n`-th
//! singular value.

mod asymptotics;
mod comparison;
mod criterion;
mod green;
mod hankel;

pub use asymptotics::{verify_strong_asymptotics, AsymptoticsReport, AsymptoticsRow, Contour, Source};
pub use comparison::{build_comparison_scheme, order_roots, ComparisonScheme, RootOrder, SignedMeasureSamples};
pub use criterion::{check_comparison_criterion, comparison_for_record, Approximant, CriterionReport};
pub use green::{green_equilibrium, pole_diagnostics, GreenEquilibrium, PoleDiagnostics, PoleRow};
pub use hankel::{
    dvp_lower_bound, hankel_sigma, hankel_symbol, outer_factor, DvpBound, HankelSigma, HankelSymbol, OuterFactor,
};

use crate::error::{Error, Result};

/// Serializes rows under the given header.
pub(crate) fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(format!("csv: {e}")))
}

/// Shortest representation that parses back to the same value.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}
