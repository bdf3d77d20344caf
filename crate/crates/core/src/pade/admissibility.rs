//! Finite-`n` diagnostics for the admissibility of a scheme.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::scheme::InterpolationScheme;
use crate::cauchy::TargetFunction;
use crate::error::Result;

/// Number of projection directions in the sliced transport distance.
const SLICES: usize = 64;

/// Proxies for the three admissibility conditions. The weak* condition is
/// asymptotic and cannot be decided from finitely many sets; no verdict is
/// given.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    /// `(n, Σ_{e∈E_n} |φ(e) − φ(ē)|)`.
    pub symmetry_sums: Vec<(usize, f64)>,
    pub max_symmetry_sum: f64,
    /// Smallest distance of a finite node to `[a, b] ∪ Λ`.
    pub min_distance: f64,
    /// Centre of the Möbius map `1/(z − z₀)` applied before comparing sets.
    pub z0: C64,
    /// `(n, n', d)`: sliced transport distance between the counting
    /// measures of consecutive sets after the Möbius map.
    pub transport: Vec<(usize, usize, f64)>,
}

/// Diagnostics over the sets with `n ≤ n_max`.
pub fn admissibility_report(target: &TargetFunction, scheme: &InterpolationScheme, n_max: usize) -> Result<AdmissibilityReport> {
    let seg = target.segment();
    let sets: Vec<_> = scheme.sets().iter().filter(|s| s.len() <= n_max).collect();
    let mut symmetry_sums = Vec::with_capacity(sets.len());
    let mut min_distance = f64::INFINITY;
    for s in &sets {
        let mut sum = 0.0;
        for &e in s.points() {
            sum += (seg.phi(e)? - seg.phi(e.conj())?).norm();
            min_distance = min_distance.min(target.singular_distance(e));
        }
        symmetry_sums.push((s.len(), sum));
    }
    let max_symmetry_sum = symmetry_sums.iter().map(|x| x.1).fold(0.0, f64::max);
    let all: Vec<C64> = sets.iter().flat_map(|s| s.points().iter().copied()).collect();
    let z0 = [C64::new(0.0, 0.0), C64::new(0.0, 0.5), C64::new(0.5, 0.0), C64::new(-0.5, 0.25)]
        .into_iter()
        .max_by(|a, b| clearance(&all, *a).total_cmp(&clearance(&all, *b)))
        .unwrap_or_default();
    let mapped: Vec<Vec<C64>> = sets
        .iter()
        .map(|s| {
            let mut v: Vec<C64> = s.points().iter().map(|&e| (e - z0).inv()).collect();
            v.extend(std::iter::repeat_n(C64::new(0.0, 0.0), s.at_infinity()));
            v
        })
        .collect();
    let transport = sets
        .windows(2)
        .zip(mapped.windows(2))
        .map(|(s, m)| (s[0].len(), s[1].len(), sliced_transport(&m[0], &m[1])))
        .collect();
    Ok(AdmissibilityReport { symmetry_sums, max_symmetry_sum, min_distance, z0, transport })
}

fn clearance(points: &[C64], z: C64) -> f64 {
    points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
}

/// Average over directions of the 1-Wasserstein distance between the
/// projected uniform measures on `a` and `b`.
pub fn sliced_transport(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for k in 0..SLICES {
        let dir = C64::from_polar(1.0, std::f64::consts::PI * k as f64 / SLICES as f64);
        let proj = |v: &[C64]| {
            let mut p: Vec<f64> = v.iter().map(|z| (z * dir.conj()).re).collect();
            p.sort_by(f64::total_cmp);
            p
        };
        total += wasserstein_1d(&proj(a), &proj(b));
    }
    total / SLICES as f64
}

/// `∫ |F_a − F_b|` for sorted samples with uniform weights.
fn wasserstein_1d(a: &[f64], b: &[f64]) -> f64 {
    let (wa, wb) = (1.0 / a.len() as f64, 1.0 / b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb) = (0.0f64, 0.0f64);
    let mut x = a[0].min(b[0]);
    let mut out = 0.0;
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => break,
        };
        out += (fa - fb).abs() * (next - x);
        x = next;
        while i < a.len() && a[i] <= x {
            fa += wa;
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            fb += wb;
            j += 1;
        }
    }
    out
}
