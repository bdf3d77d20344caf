//! Interpolation nodes for the comparison approximant of degree `n − 1`.
//!
//! From the roots `ξ_1..ξ_n` of a critical point and a signed measure `ν̌`
//! of mass 2 on `[a, b]`, the roots with real part in `(a, b)` are ordered
//! by real part and `ν̌` is cut into cells at the midpoints of consecutive
//! real parts: `c_j` is the mass of cell `j`, `b_j = c_1 + … + c_j`,
//! `a_j = 2 − b_j`. The points `y_j = (a_j ξ_j + b_j ξ_{j+1})/2` replace
//! consecutive pairs of roots, and the nodes are the reflections `1/ȳ_j`
//! together with the reflections of the roots left out of the ordering.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::cauchy::TargetFunction;
use crate::critical::CriticalPointRecord;
use crate::error::{Error, Result};
use crate::pade::InterpolationSet;

/// Required agreement of the total mass with 2.
const MASS_TOLERANCE: f64 = 1e-9;

/// Real parts closer than this (relative to `b − a`) are treated as equal.
const TIE_TOLERANCE: f64 = 1e-10;

/// Signed measure on `[a, b]` given by its density against the arcsine
/// distribution `ω` at sorted grid points.
///
/// The density is taken constant on the cells obtained by bisecting the
/// angle `θ = arccos((2t − a − b)/(b − a))` between consecutive grid
/// points, so on the Chebyshev grid `t_k = (a+b)/2 − ((b−a)/2) cos(π(k+½)/K)`
/// every point carries `ω`-mass `1/K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct SignedMeasureSamples {
    a: f64,
    b: f64,
    grid: Vec<f64>,
    density: Vec<f64>,
    /// Angle bounds of the cells, decreasing from π to 0.
    #[serde(skip)]
    theta_edges: Vec<f64>,
    mass: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    a: f64,
    b: f64,
    grid: Vec<f64>,
    density: Vec<f64>,
    #[serde(default)]
    mass: Option<f64>,
}

impl TryFrom<RawMeasure> for SignedMeasureSamples {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        let out = Self::new(raw.a, raw.b, raw.grid, raw.density)?;
        if let Some(m) = raw.mass {
            if (m - out.mass).abs() > MASS_TOLERANCE * m.abs().max(1.0) {
                return Err(Error::Invalid(format!("stated mass {m} differs from the samples' mass {}", out.mass)));
            }
        }
        Ok(out)
    }
}

impl SignedMeasureSamples {
    pub fn new(a: f64, b: f64, grid: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Invalid("a < b required".into()));
        }
        if grid.is_empty() || grid.len() != density.len() {
            return Err(Error::Dimension(format!("{} grid points and {} density values", grid.len(), density.len())));
        }
        if grid.iter().chain(&density).any(|v| !v.is_finite()) {
            return Err(Error::Invalid("grid and density must be finite".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] < a || grid[grid.len() - 1] > b {
            return Err(Error::Invalid("grid must increase strictly inside [a, b]".into()));
        }
        let theta: Vec<f64> = grid.iter().map(|&t| theta_of(a, b, t)).collect();
        let mut theta_edges = vec![PI];
        theta_edges.extend(theta.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        theta_edges.push(0.0);
        let mass = density.iter().zip(theta_edges.windows(2)).map(|(h, e)| h * (e[0] - e[1]) / PI).sum();
        Ok(Self { a, b, grid, density, theta_edges, mass })
    }

    /// `total · ω` on the `k`-point Chebyshev grid.
    pub fn arcsine(a: f64, b: f64, total: f64, k: usize) -> Result<Self> {
        Self::from_fn(a, b, k, |_| total)
    }

    /// Density `h(t)` against `ω` sampled on the `k`-point Chebyshev grid.
    pub fn from_fn(a: f64, b: f64, k: usize, h: impl Fn(f64) -> f64) -> Result<Self> {
        let (c, s) = (0.5 * (a + b), 0.5 * (b - a));
        let grid: Vec<f64> = (0..k).map(|j| c - s * (PI * (j as f64 + 0.5) / k as f64).cos()).collect();
        let density = grid.iter().map(|&t| h(t)).collect();
        Self::new(a, b, grid, density)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Total variation `‖ν̌‖`.
    pub fn total_variation(&self) -> f64 {
        self.density.iter().zip(self.theta_edges.windows(2)).map(|(h, e)| h.abs() * (e[0] - e[1]) / PI).sum()
    }

    /// `ν̌([lo, hi])`; the measure has no atoms, so endpoints do not matter.
    pub fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        let (t_hi, t_lo) = (theta_of(self.a, self.b, lo), theta_of(self.a, self.b, hi));
        self.density
            .iter()
            .zip(self.theta_edges.windows(2))
            .map(|(h, e)| {
                let overlap = (e[0].min(t_hi) - e[1].max(t_lo)).max(0.0);
                h * overlap / PI
            })
            .sum()
    }
}

fn theta_of(a: f64, b: f64, t: f64) -> f64 {
    ((2.0 * t - a - b) / (b - a)).clamp(-1.0, 1.0).acos()
}

/// Roots split as in the construction: those ordered along `(a, b)` and
/// the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct RootOrder {
    /// `ξ_1..ξ_d`, real parts strictly increasing inside `(a, b)`.
    pub interval: Vec<C64>,
    /// Roots with real part outside `(a, b)` or repeating one of the
    /// ordered real parts.
    pub other: Vec<C64>,
    /// Roots attracted by the poles of the rational part.
    pub attracted: Vec<C64>,
}

/// Orders the roots of a critical point.
///
/// For each pole of the rational part (with multiplicity) the nearest
/// unused root is set aside. Among the remaining roots with real part in
/// `(a, b)`, one representative per real part is kept: the one closest to
/// the real axis, and of a conjugate pair the one in the upper half-plane.
/// The others join `other`, so the result depends only on the multiset of
/// roots. Non-finite roots cannot be ordered and give an ordering error.
pub fn order_roots(target: &TargetFunction, roots: &[C64]) -> Result<RootOrder> {
    if let Some(i) = roots.iter().position(|r| !r.is_finite()) {
        return Err(Error::Invalid(format!("ordering error: root {i} is not finite")));
    }
    let seg = target.segment();
    let (a, b) = (seg.a, seg.b);
    let tie = TIE_TOLERANCE * (b - a);
    let mut rest: Vec<C64> = roots.to_vec();
    let mut attracted = Vec::new();
    for pole in target.rational().poles() {
        for _ in 0..pole.multiplicity() {
            let Some((pos, _)) = rest
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 - pole.location).norm().total_cmp(&(y.1 - pole.location).norm()))
            else {
                return Err(Error::Precondition("fewer roots than poles of the rational part".into()));
            };
            attracted.push(rest.remove(pos));
        }
    }
    let (mut inside, mut other): (Vec<C64>, Vec<C64>) = rest.into_iter().partition(|r| r.re > a && r.re < b);
    inside.sort_by(|x, y| x.re.total_cmp(&y.re));
    let mut interval = Vec::new();
    let mut i = 0;
    while i < inside.len() {
        let mut j = i + 1;
        while j < inside.len() && inside[j].re - inside[i].re <= tie {
            j += 1;
        }
        let mut block = inside[i..j].to_vec();
        block.sort_by(|x, y| x.im.abs().total_cmp(&y.im.abs()).then(y.im.total_cmp(&x.im)));
        interval.push(block[0]);
        other.extend(&block[1..]);
        i = j;
    }
    Ok(RootOrder { interval, other, attracted })
}

/// Output of the construction, with the intermediate coefficients.
#[derive(Clone, Debug)]
pub struct ComparisonScheme {
    /// The `n − 1` nodes.
    pub set: InterpolationSet,
    pub order: RootOrder,
    /// `c_1..c_d`.
    pub c: Vec<f64>,
    /// `b_1..b_{d−1}`.
    pub b: Vec<f64>,
    /// `a_1..a_{d−1}`.
    pub a: Vec<f64>,
    /// `y_1..y_{d−1}`.
    pub y: Vec<C64>,
}

/// Nodes of size `n − 1` from a critical point of degree `n` and `ν̌`.
pub fn build_comparison_scheme(
    target: &TargetFunction,
    nu: &SignedMeasureSamples,
    record: &CriticalPointRecord,
) -> Result<ComparisonScheme> {
    if (nu.mass() - 2.0).abs() > MASS_TOLERANCE {
        return Err(Error::Precondition(format!("ν̌ has mass {}, not 2", nu.mass())));
    }
    let seg = target.segment();
    if (nu.a() - seg.a).abs() > 1e-12 || (nu.b() - seg.b).abs() > 1e-12 {
        return Err(Error::Precondition(format!("ν̌ lives on [{}, {}], not on the support", nu.a(), nu.b())));
    }
    let roots = record.q()?.roots();
    let order = order_roots(target, &roots)?;
    let xi = &order.interval;
    let d = xi.len();
    if d == 0 {
        return Err(Error::Precondition("no root has its real part inside (a, b)".into()));
    }
    let mut cuts = vec![seg.a];
    cuts.extend(xi.windows(2).map(|w| 0.5 * (w[0].re + w[1].re)));
    cuts.push(seg.b);
    let c: Vec<f64> = cuts.windows(2).map(|w| nu.mass_between(w[0], w[1])).collect();
    let b: Vec<f64> = c[..d - 1].iter().scan(0.0, |acc, &v| {
        *acc += v;
        Some(*acc)
    }).collect();
    let a: Vec<f64> = b.iter().map(|v| 2.0 - v).collect();
    let y: Vec<C64> = (0..d - 1).map(|j| (xi[j] * a[j] + xi[j + 1] * b[j]) * 0.5).collect();
    let mut sources = y.clone();
    sources.extend(&order.other);
    sources.extend(&order.attracted);
    let set = InterpolationSet::reflected(&sources);
    Ok(ComparisonScheme { set, order, c, b, a, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::MeasureM;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn arcsine_cells_are_exact() {
        let nu = SignedMeasureSamples::arcsine(-0.5, 0.5, 2.0, 400).unwrap();
        assert!((nu.mass() - 2.0).abs() < 1e-13);
        // ω([a, 0]) = ½ and ω([a, x]) = 1 − arccos(2x)/π on [−½, ½].
        assert!((nu.mass_between(-0.5, 0.0) - 1.0).abs() < 1e-13);
        let x: f64 = 0.3;
        let want = 2.0 * (1.0 - (2.0 * x).acos() / PI);
        assert!((nu.mass_between(-0.5, x) - want).abs() < 2.0 / 400.0);
    }

    #[test]
    fn equal_real_parts_keep_one_representative() {
        let target = TargetFunction::markov(MeasureM::constant(-0.5, 0.5, c(1.0, 0.0)).unwrap());
        let ok = order_roots(&target, &[c(0.1, 0.2), c(0.1, 0.05), c(-0.2, 0.0), c(0.7, 0.0)]).unwrap();
        assert_eq!(ok.interval, vec![c(-0.2, 0.0), c(0.1, 0.05)]);
        assert_eq!(ok.other, vec![c(0.7, 0.0), c(0.1, 0.2)]);
        let pair = order_roots(&target, &[c(0.1, -0.2), c(0.1, 0.2)]).unwrap();
        assert_eq!(pair.interval, vec![c(0.1, 0.2)]);
        assert!(order_roots(&target, &[c(f64::NAN, 0.0)]).is_err());
    }
}
