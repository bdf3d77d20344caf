//! Numerical tolerances and defaults shared by every module.
//!
//! All thresholds live here so that a run can be reproduced from its
//! configuration alone. The values are artifact decisions: the underlying
//! mathematics is exact and prescribes none of them.

use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Zero and margin thresholds
// ---------------------------------------------------------------------------

/// Relative size below which a coefficient or sample is treated as zero.
pub const TAU_ZERO: f64 = 1e-13;

/// Minimal distance of a denominator root to the unit circle, and of an
/// evaluation point to the support or to a pole.
pub const TAU_MARGIN: f64 = 1e-8;

/// Agreement required between a truncated Laurent series and its exact
/// evaluator on `|z| = 2`.
pub const TAU_SERIES: f64 = 1e-9;

/// Root distance under which a numerator root and a denominator root are
/// declared common.
pub const TAU_GCD: f64 = 1e-8;

/// Gradient norm accepted as a critical point.
pub const TOL_CRIT: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Discretization defaults
// ---------------------------------------------------------------------------

/// Minimal truncation length of a Laurent tail.
pub const MIN_TAIL_LEN: usize = 256;

/// Initial Gauss-Chebyshev node count.
pub const QUAD_NODES: usize = 256;

/// Node count at which quadrature doubling gives up.
pub const QUAD_NODES_MAX: usize = 16384;

/// Agreement between two successive quadrature levels.
pub const QUAD_AGREEMENT: f64 = 1e-11;

/// Distance to the support below which Cauchy-type integrals switch from
/// plain quadrature to a Chebyshev expansion.
pub const NEAR_CUT: f64 = 0.05;

/// Largest pole multiplicity accepted in a rational part.
pub const MAX_POLE_MULTIPLICITY: usize = 5;

/// Largest circle grid used for integrals over the unit circle.
pub const CIRCLE_GRID_MAX: usize = 1 << 15;

/// Smallest circle grid used for integrals over the unit circle.
pub const CIRCLE_GRID_MIN: usize = 512;

/// Condition number of a Gram matrix above which a warning is attached.
pub const GRAM_COND_WARN: f64 = 1e12;

/// Default grid size for winding numbers on the circle.
pub const WINDING_GRID: usize = 4096;

/// Default number of points on the asymptotics test contour.
pub const CONTOUR_POINTS: usize = 512;

/// Default radius of the asymptotics test contour.
pub const CONTOUR_RADIUS: f64 = 2.0;

/// Grid size of the discrete Green equilibrium problem.
pub const GREEN_GRID: usize = 400;

/// Largest accepted total variation of the density argument.
pub const ARG_VARIATION_MAX: f64 = 64.0;

// ---------------------------------------------------------------------------
// Solver controls
// ---------------------------------------------------------------------------

/// Overridable solver tolerances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Gradient norm accepted as critical.
    pub tol_crit: f64,
    /// Common-root distance for the irreducibility test.
    pub tau_gcd: f64,
    /// Root displacement that ends the fixed-point phase.
    pub fixed_point_stop: f64,
    /// Root displacement at which the solver hands over to Newton.
    pub newton_switch: f64,
    /// Iteration cap of the fixed-point phase.
    pub fixed_point_max_iter: usize,
    /// Iteration cap of the Newton phase.
    pub newton_max_iter: usize,
    /// Root modulus beyond which a critical point is flagged boundary-suspect.
    pub boundary_suspect: f64,
    /// Root distance used to deduplicate critical points across starts.
    pub dedup_distance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_crit: TOL_CRIT,
            tau_gcd: TAU_GCD,
            fixed_point_stop: 1e-12,
            newton_switch: 1e-4,
            fixed_point_max_iter: 200,
            newton_max_iter: 60,
            boundary_suspect: 1.0 - 1e-6,
            dedup_distance: 1e-6,
        }
    }
}

/// Default Laurent truncation for an approximation problem of degree `n`.
pub fn tail_len(n: usize) -> usize {
    MIN_TAIL_LEN.max(16 * n)
}
