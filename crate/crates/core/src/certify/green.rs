//! Green equilibrium distribution of `[a, b]` in the unit disk and the
//! distribution of critical-point poles.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{csv_string, fmt_f64};
use crate::critical::CriticalPointRecord;
use crate::error::{Error, Result};

/// Largest accepted deviation of the discrete Green potential from its
/// constant value, relative to that value.
const FLATNESS: f64 = 1e-3;

/// Number of histogram bins for the real parts of the poles.
const HISTOGRAM_BINS: usize = 20;

/// Discrete Green equilibrium measure: piecewise-constant density on cells
/// with Chebyshev-spaced edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreenEquilibrium {
    pub a: f64,
    pub b: f64,
    /// Cell edges, increasing from `a` to `b`.
    pub edges: Vec<f64>,
    /// Mass of each cell.
    pub masses: Vec<f64>,
    /// Mass divided by cell width.
    pub density: Vec<f64>,
    /// Value of the Green potential on the support.
    pub potential: f64,
    /// Largest relative deviation of the potential at the cell edges.
    pub flatness: f64,
}

impl GreenEquilibrium {
    /// Distribution function, linear inside each cell.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.a {
            return 0.0;
        }
        if x >= self.b {
            return 1.0;
        }
        let k = self.edges.partition_point(|&e| e <= x) - 1;
        let below: f64 = self.masses[..k].iter().sum();
        below + self.density[k] * (x - self.edges[k])
    }
}

/// `∫ log|x − t| dt` as a function of `t`.
fn log_primitive(x: f64, t: f64) -> f64 {
    let u = t - x;
    if u == 0.0 {
        0.0
    } else {
        u * u.abs().ln() - u
    }
}

/// `∫ log|1 − x t| dt` as a function of `t`.
fn reflected_primitive(x: f64, t: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let u = 1.0 - x * t;
    -(u * u.abs().ln() - u) / x
}

/// Cell average over `[lo, hi]` of the Green kernel `log|(1 − xt)/(x − t)|`.
fn cell_kernel(x: f64, lo: f64, hi: f64) -> f64 {
    let near = log_primitive(x, hi) - log_primitive(x, lo);
    let far = reflected_primitive(x, hi) - reflected_primitive(x, lo);
    (far - near) / (hi - lo)
}

/// Minimizer of the Green energy of the disk over probability measures on
/// `[a, b]`, discretized on `grid_size` cells.
///
/// The cell masses solve the stationarity system: equal potential at the
/// cell midpoints (in angle) and unit total mass. The potential is then
/// checked at the cell edges.
pub fn green_equilibrium(a: f64, b: f64, grid_size: usize) -> Result<GreenEquilibrium> {
    if !(a < b) {
        return Err(Error::Invalid("a < b required".into()));
    }
    if !(a > -1.0 && b < 1.0) {
        return Err(Error::Invalid(format!("[{a}, {b}] must lie inside (−1, 1)")));
    }
    if grid_size < 2 {
        return Err(Error::Invalid("at least two cells are needed".into()));
    }
    let k = grid_size;
    let (c, s) = (0.5 * (a + b), 0.5 * (b - a));
    let edges: Vec<f64> = (0..=k).map(|j| c - s * (PI * j as f64 / k as f64).cos()).collect();
    let mids: Vec<f64> = (0..k).map(|j| c - s * (PI * (j as f64 + 0.5) / k as f64).cos()).collect();
    let mut sys = DMatrix::<f64>::zeros(k + 1, k + 1);
    for (i, &x) in mids.iter().enumerate() {
        for j in 0..k {
            sys[(i, j)] = cell_kernel(x, edges[j], edges[j + 1]);
        }
        sys[(i, k)] = -1.0;
        sys[(k, i)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;
    let sol = sys
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Consistency("singular Green stationarity system".into()))?;
    let masses: Vec<f64> = sol.iter().take(k).copied().collect();
    let potential = sol[k];
    let density: Vec<f64> = masses.iter().zip(edges.windows(2)).map(|(m, e)| m / (e[1] - e[0])).collect();
    let mut flatness: f64 = 0.0;
    for &x in &edges[1..k] {
        let u: f64 = masses.iter().enumerate().map(|(j, m)| m * cell_kernel(x, edges[j], edges[j + 1])).sum();
        flatness = flatness.max((u - potential).abs() / potential.abs());
    }
    if flatness > FLATNESS {
        return Err(Error::Resolution(format!(
            "Green potential deviates by {flatness:.2e} on {k} cells; refine the grid"
        )));
    }
    Ok(GreenEquilibrium { a, b, edges, masses, density, potential, flatness })
}

/// Pole statistics of the critical point at one degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleRow {
    pub n: usize,
    pub sum_abs_im: f64,
    pub max_abs_im: f64,
    /// Kolmogorov–Smirnov distance between the real parts and the Green
    /// equilibrium distribution.
    pub ks_distance: f64,
    /// Counts of real parts in equal bins of `[a, b]`, clamped at the ends.
    pub histogram: Vec<usize>,
}

/// Per-degree pole statistics with the trends across degrees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleDiagnostics {
    pub rows: Vec<PoleRow>,
    /// Largest `Σ|Im ξ|` over the degrees.
    pub sum_abs_im_bound: f64,
    /// Whether the distance to the Green distribution decreases with `n`;
    /// reported from three degrees on.
    pub ks_decreasing: Option<bool>,
}

impl PoleDiagnostics {
    pub const CSV_HEADER: [&'static str; 4] = ["n", "sum_abs_im", "max_abs_im", "ks_distance"];

    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &Self::CSV_HEADER,
            self.rows.iter().map(|r| {
                vec![r.n.to_string(), fmt_f64(r.sum_abs_im), fmt_f64(r.max_abs_im), fmt_f64(r.ks_distance)]
            }),
        )
    }
}

/// Imaginary parts, histogram and distance to the Green equilibrium of the
/// poles of one record per degree, in increasing degree.
pub fn pole_diagnostics(records: &[CriticalPointRecord], green: &GreenEquilibrium) -> Result<PoleDiagnostics> {
    let mut sorted: Vec<&CriticalPointRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.degree);
    let width = (green.b - green.a) / HISTOGRAM_BINS as f64;
    let mut rows = Vec::with_capacity(sorted.len());
    for rec in sorted {
        let poles = &rec.poles;
        let sum_abs_im = poles.iter().map(|p| p.im.abs()).sum();
        let max_abs_im = poles.iter().map(|p| p.im.abs()).fold(0.0, f64::max);
        let mut x: Vec<f64> = poles.iter().map(|p| p.re).collect();
        x.sort_by(f64::total_cmp);
        let m = x.len() as f64;
        let ks_distance = x
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let g = green.cdf(v);
                ((i + 1) as f64 / m - g).max(g - i as f64 / m)
            })
            .fold(0.0, f64::max);
        let mut histogram = vec![0; HISTOGRAM_BINS];
        for &v in &x {
            let bin = ((v - green.a) / width).floor().clamp(0.0, (HISTOGRAM_BINS - 1) as f64) as usize;
            histogram[bin] += 1;
        }
        rows.push(PoleRow { n: rec.degree, sum_abs_im, max_abs_im, ks_distance, histogram });
    }
    let sum_abs_im_bound = rows.iter().map(|r| r.sum_abs_im).fold(0.0, f64::max);
    let ks_decreasing = (rows.len() >= 3).then(|| rows.windows(2).all(|w| w[1].ks_distance <= w[0].ks_distance));
    Ok(PoleDiagnostics { rows, sum_abs_im_bound, ks_decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_with_unit_mass() {
        let g = green_equilibrium(-0.5, 0.5, 400).unwrap();
        assert!((g.masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for j in 0..200 {
            assert!((g.masses[j] - g.masses[399 - j]).abs() < 1e-10);
        }
        assert!(g.masses.iter().all(|&m| m > 0.0));
        assert!((g.cdf(0.0) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(green_equilibrium(0.5, 0.3, 100).is_err());
        assert!(green_equilibrium(-1.0, 0.3, 100).is_err());
    }
}
