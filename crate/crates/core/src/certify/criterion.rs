//! The comparison criterion for a critical point.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::comparison::{build_comparison_scheme, ComparisonScheme, SignedMeasureSamples};
use super::{csv_string, fmt_f64};
use crate::cauchy::TargetFunction;
use crate::config::{CIRCLE_GRID_MAX, TAU_ZERO};
use crate::critical::CriticalPointRecord;
use crate::error::{Error, Result};
use crate::hardy::{circle_points, winding_number, CircleGrid};
use crate::pade::{build_pade_doubled, PadeApproximant};

/// A rational function whose error against the target can be evaluated.
pub trait Approximant {
    /// `Π(z)`.
    fn value(&self, z: C64) -> C64;
    /// `(𝔉 − Π)(z)`.
    fn error(&self, target: &TargetFunction, z: C64) -> Result<C64>;
}

impl Approximant for PadeApproximant {
    fn value(&self, z: C64) -> C64 {
        self.eval(z)
    }

    fn error(&self, target: &TargetFunction, z: C64) -> Result<C64> {
        PadeApproximant::error(self, target, z)
    }
}

impl Approximant for CriticalPointRecord {
    fn value(&self, z: C64) -> C64 {
        horner(&self.l_coeffs, z) / horner(&self.q_coeffs, z)
    }

    fn error(&self, target: &TargetFunction, z: C64) -> Result<C64> {
        Ok(target.eval(z)? - self.value(z))
    }
}

pub(crate) fn horner(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Outcome of the comparison criterion for one candidate `Π`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub n: usize,
    /// `min_𝕋 |1 − (𝔉 − Π)/(𝔉 − L_q/q)|`.
    pub min_ratio: f64,
    /// `wn(𝔉 − Π)`.
    pub winding: i64,
    /// `min_ratio > 2` and `winding = 1 − 2n`.
    pub passed: bool,
    /// Grid on which the winding number stabilized.
    pub grid_size: usize,
}

impl CriterionReport {
    pub const CSV_HEADER: [&'static str; 4] = ["n", "min_ratio", "winding", "passed"];

    pub fn csv_row(&self) -> Vec<String> {
        vec![self.n.to_string(), fmt_f64(self.min_ratio), self.winding.to_string(), self.passed.to_string()]
    }

    pub fn to_csv(reports: &[CriterionReport]) -> Result<String> {
        csv_string(&Self::CSV_HEADER, reports.iter().map(Self::csv_row))
    }
}

/// Checks `|1 − (𝔉 − Π)/(𝔉 − L_q/q)| > 2` on the circle and
/// `wn(𝔉 − Π) = 1 − 2n`.
///
/// The grid starts at `grid_size` and doubles until the winding number of
/// `𝔉 − Π` agrees on two consecutive sizes; the ratio is taken on the finer
/// one. A failed check only rules out this `Π`.
pub fn check_comparison_criterion(
    target: &TargetFunction,
    record: &CriticalPointRecord,
    pi: &dyn Approximant,
    grid_size: usize,
) -> Result<CriterionReport> {
    if !record.irreducible {
        return Err(Error::Precondition(format!("the degree-{} record is reducible", record.degree)));
    }
    let mut m = grid_size.next_power_of_two().max(8);
    let mut prev: Option<i64> = None;
    loop {
        if m > 2 * CIRCLE_GRID_MAX {
            return Err(Error::Resolution(format!("winding of 𝔉 − Π did not stabilize up to {}", m / 2)));
        }
        let pts = circle_points(m);
        let d: Vec<C64> = pts.iter().map(|&t| pi.error(target, t)).collect::<Result<_>>()?;
        let wn = match winding_number(&CircleGrid::new(d.clone())?) {
            Ok(w) => Some(w),
            Err(Error::Resolution(_)) => None,
            Err(e) => return Err(e),
        };
        if wn.is_some() && wn == prev {
            let winding = wn.unwrap_or_default();
            let f = target.sample_circle(m)?;
            let e: Vec<C64> = f.samples().iter().zip(&pts).map(|(&fv, &t)| fv - record.value(t)).collect();
            let scale = f.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
            let floor = e.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
            if !(floor > TAU_ZERO * scale) {
                return Err(Error::Inapplicable(format!(
                    "𝔉 − L_q/q vanishes on the circle (minimum modulus {floor:.3e})"
                )));
            }
            let min_ratio = d.iter().zip(&e).map(|(dv, ev)| (1.0 - dv / ev).norm()).fold(f64::INFINITY, f64::min);
            let n = record.degree;
            let passed = min_ratio > 2.0 && winding == 1 - 2 * n as i64;
            return Ok(CriterionReport { n, min_ratio, winding, passed, grid_size: m });
        }
        prev = wn;
        m *= 2;
    }
}

/// Comparison scheme and degree `n − 1` Padé approximant for a record.
pub fn comparison_for_record(
    target: &TargetFunction,
    nu: &SignedMeasureSamples,
    record: &CriticalPointRecord,
) -> Result<(ComparisonScheme, PadeApproximant)> {
    let scheme = build_comparison_scheme(target, nu, record)?;
    let pi = build_pade_doubled(target, &scheme.set)?;
    Ok((scheme, pi))
}
