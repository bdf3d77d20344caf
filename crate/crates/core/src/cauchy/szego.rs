//! Szegő functions and geometric means of non-vanishing densities.

use num_complex::Complex64 as C64;

use super::chebyshev::{coeffs_from_gauss, effective_length, gauss_nodes};
use super::conformal::{Segment, Side};
use super::measure::MeasureM;
use super::unwrap::unwrap_argument;
use crate::config::{NEAR_CUT, QUAD_NODES, QUAD_NODES_MAX};
use crate::error::{Error, Result};

/// Szegő data of `h` on `[a, b]`: the geometric mean `G_h` and the
/// Chebyshev coefficients of one continuous branch of `log h`.
///
/// Off the support,
/// `D_h(z) = exp{(w(z)/2) ∫ log h/(z − t) dω − ½ ∫ log h dω}`, which equals
/// `exp(½ Σ_{k≥1} c_k φ(z)^k)` with `c_k` the coefficients of `log h`.
#[derive(Clone, Debug)]
pub struct SzegoData {
    segment: Segment,
    gm: C64,
    log_coeffs: Vec<C64>,
    /// Gauss-Chebyshev nodes (increasing) and `log h` there.
    nodes: Vec<f64>,
    log_values: Vec<C64>,
}

impl SzegoData {
    /// Samples `h`, unwraps its argument along the nodes and doubles the
    /// node count until the coefficients of `log h` have decayed.
    pub fn new(segment: Segment, h: impl Fn(f64) -> C64) -> Result<Self> {
        let mut k = QUAD_NODES;
        loop {
            let x = gauss_nodes(k);
            let nodes: Vec<f64> = x.iter().rev().map(|&x| segment.from_x(C64::new(x, 0.0)).re).collect();
            let vals: Vec<C64> = nodes.iter().map(|&t| h(t)).collect();
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::Class("h is not finite on the support".into()));
            }
            let arg = unwrap_argument(&vals)?.arg;
            let logs: Vec<C64> = vals.iter().zip(&arg).map(|(v, &a)| C64::new(v.norm().ln(), a)).collect();
            let data = Self::from_log_values(segment, logs)?;
            let len = effective_length(&data.log_coeffs, 1e-15);
            if len < k / 2 || k >= QUAD_NODES_MAX {
                return Ok(data);
            }
            k *= 2;
        }
    }

    pub fn from_measure(m: &MeasureM) -> Result<Self> {
        Self::new(*m.segment(), |t| m.eval_density(t))
    }

    /// From values of `log h` at the Gauss-Chebyshev nodes of the segment,
    /// listed by increasing `t`. Any continuous branch may be supplied.
    pub fn from_log_values(segment: Segment, log_values: Vec<C64>) -> Result<Self> {
        let k = log_values.len();
        if k < 2 {
            return Err(Error::Invalid("at least two samples of log h are needed".into()));
        }
        let decreasing: Vec<C64> = log_values.iter().rev().copied().collect();
        let log_coeffs = coeffs_from_gauss(&decreasing);
        let nodes = gauss_nodes(k).iter().rev().map(|&x| segment.from_x(C64::new(x, 0.0)).re).collect();
        Ok(Self { segment, gm: log_coeffs[0].exp(), log_coeffs, nodes, log_values })
    }

    pub fn segment(&self) -> &Segment {
        &self.segment
    }

    /// Geometric mean `G_h = exp ∫ log h dω`.
    pub fn gm(&self) -> C64 {
        self.gm
    }

    pub fn log_coeffs(&self) -> &[C64] {
        &self.log_coeffs
    }

    /// `D_h(z)` off the support; `D_h(∞) = 1`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.is_infinite() {
            return Ok(C64::new(1.0, 0.0));
        }
        if self.segment.distance(z) < NEAR_CUT {
            self.eval_series(z)
        } else {
            self.eval_quadrature(z)
        }
    }

    /// Series route `exp(½ Σ_{k≥1} c_k φ^k)`.
    pub fn eval_series(&self, z: C64) -> Result<C64> {
        Ok(self.series_at(self.segment.phi(z)?))
    }

    /// Quadrature route through the defining integrals.
    pub fn eval_quadrature(&self, z: C64) -> Result<C64> {
        let w = self.segment.w(z)?;
        let k = self.nodes.len() as f64;
        let s: C64 = self.nodes.iter().zip(&self.log_values).map(|(&t, &l)| l / (z - t)).sum::<C64>() / k;
        Ok((w * s * 0.5 - self.log_coeffs[0] * 0.5).exp())
    }

    /// One-sided boundary value `D_h^±(t)` for `t` inside the segment.
    pub fn boundary(&self, t: f64, side: Side) -> C64 {
        self.series_at(self.segment.phi_boundary(t, side))
    }

    fn series_at(&self, v: C64) -> C64 {
        let s = self.log_coeffs[1..].iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| (acc + c) * v);
        (s * 0.5).exp()
    }
}

/// `D_h(z)` for the density of `m`.
pub fn szego_function(m: &MeasureM, z: C64) -> Result<C64> {
    SzegoData::from_measure(m)?.eval(z)
}

/// `G_h` for the density of `m`.
pub fn geometric_mean(m: &MeasureM) -> Result<C64> {
    Ok(SzegoData::from_measure(m)?.gm())
}
