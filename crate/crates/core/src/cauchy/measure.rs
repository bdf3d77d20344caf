//! Class-𝕄 measures `dμ = μ̇ dω` on a segment, `ω` the arcsine distribution.

use num_complex::Complex64 as C64;

use super::chebyshev::{clenshaw, coeffs_from_gauss, gauss_nodes};
use super::conformal::Segment;
use super::expr::Expr;
use super::unwrap::unwrap_argument;
use crate::config::{ARG_VARIATION_MAX, QUAD_NODES, TAU_ZERO};
use crate::error::{Error, Result};

/// Density `μ̇` with respect to the arcsine distribution.
#[derive(Clone, Debug, PartialEq)]
pub enum Density {
    Constant(C64),
    Expr(Expr),
    /// Chebyshev interpolant in the chart variable `x ∈ [−1, 1]`.
    Chebyshev(Vec<C64>),
}

impl Density {
    fn eval_x(&self, seg: &Segment, x: f64) -> C64 {
        match self {
            Density::Constant(c) => *c,
            Density::Expr(e) => e.eval(seg.from_x(C64::new(x, 0.0)).re),
            Density::Chebyshev(c) => clenshaw(c, C64::new(x, 0.0)),
        }
    }
}

/// Measure on `[a, b] ⊂ (−1, 1)` with a non-vanishing density whose
/// argument has bounded variation on the sample nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureM {
    segment: Segment,
    density: Density,
    /// Density at the `K` Gauss-Chebyshev nodes, increasing `t`.
    samples: Vec<C64>,
    arg_variation: f64,
}

impl MeasureM {
    /// Validates the interval and the density on `QUAD_NODES` nodes.
    pub fn new(a: f64, b: f64, density: Density) -> Result<Self> {
        if !(a > -1.0 && b < 1.0) {
            return Err(Error::Invalid(format!(
                "interval must lie in (-1, 1), got a = {a}, b = {b}"
            )));
        }
        let segment = Segment::new(a, b)?;
        let mut m = Self { segment, density, samples: Vec::new(), arg_variation: 0.0 };
        m.samples = m.density_at_nodes(QUAD_NODES);
        let scale = m.samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !(scale > 0.0) || m.samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::Class("density is zero or not finite".into()));
        }
        if m.samples.iter().any(|v| v.norm() <= TAU_ZERO * scale) {
            return Err(Error::Class("density vanishes on the support".into()));
        }
        m.arg_variation = match unwrap_argument(&m.samples) {
            Ok(u) => u.total_variation,
            Err(Error::Resolution(msg)) => {
                return Err(Error::Class(format!("density argument is not continuous on the nodes: {msg}")))
            }
            Err(e) => return Err(e),
        };
        if m.arg_variation > ARG_VARIATION_MAX {
            return Err(Error::Class(format!(
                "argument variation {:.3} exceeds {ARG_VARIATION_MAX}",
                m.arg_variation
            )));
        }
        Ok(m)
    }

    /// Constant density `c`; `c = 1` gives the arcsine distribution itself.
    pub fn constant(a: f64, b: f64, c: C64) -> Result<Self> {
        Self::new(a, b, Density::Constant(c))
    }

    pub fn from_expr(a: f64, b: f64, source: &str) -> Result<Self> {
        Self::new(a, b, Density::Expr(Expr::parse(source)?))
    }

    /// Density from values at the `K` Gauss-Chebyshev nodes of `[a, b]`,
    /// listed by increasing `t`.
    pub fn from_samples(a: f64, b: f64, values: &[C64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Invalid("at least two density samples are needed".into()));
        }
        let decreasing: Vec<C64> = values.iter().rev().copied().collect();
        Self::new(a, b, Density::Chebyshev(coeffs_from_gauss(&decreasing)))
    }

    pub fn segment(&self) -> &Segment {
        &self.segment
    }

    pub fn a(&self) -> f64 {
        self.segment.a
    }

    pub fn b(&self) -> f64 {
        self.segment.b
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    /// Density samples at the default nodes, increasing `t`.
    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn arg_variation(&self) -> f64 {
        self.arg_variation
    }

    /// `μ̇(t)`.
    pub fn eval_density(&self, t: f64) -> C64 {
        self.density.eval_x(&self.segment, (t - self.segment.center()) / self.segment.half_width())
    }

    /// Gauss-Chebyshev nodes of `[a, b]` in increasing order.
    pub fn nodes(&self, k: usize) -> Vec<f64> {
        gauss_nodes(k).iter().rev().map(|&x| self.segment.from_x(C64::new(x, 0.0)).re).collect()
    }

    /// Density at the `k` nodes, increasing `t`.
    pub fn density_at_nodes(&self, k: usize) -> Vec<C64> {
        gauss_nodes(k).iter().rev().map(|&x| self.density.eval_x(&self.segment, x)).collect()
    }

    /// `∫ g(t) μ̇(t) dω(t)` with `k` nodes.
    pub fn integrate(&self, k: usize, g: impl Fn(f64) -> C64) -> C64 {
        let nodes = self.nodes(k);
        let dens = if k == self.samples.len() { self.samples.clone() } else { self.density_at_nodes(k) };
        nodes.iter().zip(&dens).map(|(&t, &d)| g(t) * d).sum::<C64>() / k as f64
    }

    /// Chebyshev coefficients of `μ̇` in the chart variable, from `k` nodes.
    pub fn chebyshev_coeffs(&self, k: usize) -> Vec<C64> {
        let vals: Vec<C64> = gauss_nodes(k).iter().map(|&x| self.density.eval_x(&self.segment, x)).collect();
        coeffs_from_gauss(&vals)
    }

    /// The same measure with density multiplied by `c`.
    pub fn scaled(&self, c: C64) -> Result<Self> {
        let density = match &self.density {
            Density::Constant(v) => Density::Constant(v * c),
            Density::Chebyshev(v) => Density::Chebyshev(v.iter().map(|x| x * c).collect()),
            Density::Expr(e) => {
                Density::Expr(Expr::parse(&format!("({})*({} + {}*i)", e.source(), c.re, c.im))?)
            }
        };
        Self::new(self.a(), self.b(), density)
    }

    /// Total mass `∫ μ̇ dω`.
    pub fn mass(&self) -> C64 {
        self.integrate(self.samples.len(), |_| C64::new(1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(MeasureM::constant(-1.2, 0.5, C64::new(1.0, 0.0)).is_err());
        assert!(MeasureM::constant(0.5, 0.3, C64::new(1.0, 0.0)).is_err());
        assert!(matches!(MeasureM::from_expr(-0.5, 0.5, "t"), Err(Error::Class(_))));
        assert!(MeasureM::from_expr(-0.5, 0.5, "exp(0.3*i*t)").is_ok());
    }

    #[test]
    fn samples_roundtrip() {
        let m = MeasureM::from_expr(-0.3, 0.6, "1 + t + i*t^2").unwrap();
        let vals = m.density_at_nodes(32);
        let s = MeasureM::from_samples(-0.3, 0.6, &vals).unwrap();
        for t in [-0.25, 0.0, 0.33, 0.59] {
            assert!((s.eval_density(t) - m.eval_density(t)).norm() < 1e-13);
        }
    }

    #[test]
    fn arcsine_mass_and_variation() {
        let m = MeasureM::from_expr(-0.5, 0.5, "exp(0.3*i*t)").unwrap();
        assert!((m.arg_variation() - 0.3).abs() < 1e-3);
        let m = MeasureM::constant(-0.5, 0.5, C64::new(1.0, 0.0)).unwrap();
        assert!((m.mass() - 1.0).norm() < 1e-14);
    }
}
