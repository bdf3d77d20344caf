//! Targets `𝔉 = f_μ + r`: a Cauchy transform plus a rational part.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::chebyshev::effective_length;
use super::conformal::Segment;
use super::measure::MeasureM;
use crate::config::{MAX_POLE_MULTIPLICITY, NEAR_CUT, QUAD_AGREEMENT, QUAD_NODES, QUAD_NODES_MAX, TAU_MARGIN};
use crate::error::{Error, Result};
use crate::hardy::{CircleGrid, LaurentTail};

/// Principal part `Σ_m coeffs[m] (z − location)^{−m−1}` at one pole.
#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub location: C64,
    pub coeffs: Vec<C64>,
}

impl Pole {
    pub fn simple(location: C64, residue: C64) -> Self {
        Self { location, coeffs: vec![residue] }
    }

    pub fn multiplicity(&self) -> usize {
        self.coeffs.len()
    }

    /// Value of the principal part at `z`.
    pub fn eval(&self, z: C64) -> C64 {
        let u = (z - self.location).inv();
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| (acc + c) * u)
    }

    /// Coefficient of `z^{−k}` in the expansion at infinity.
    pub fn laurent_coeff(&self, k: usize) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let m = i + 1;
            if k >= m {
                s += c * binomial(k - 1, m - 1) * self.location.powu((k - m) as u32);
            }
        }
        s
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Rational part `r`, a finite sum of principal parts.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RationalPart {
    poles: Vec<Pole>,
}

impl RationalPart {
    pub fn new(poles: Vec<Pole>) -> Result<Self> {
        for (i, p) in poles.iter().enumerate() {
            if p.coeffs.is_empty() || p.multiplicity() > MAX_POLE_MULTIPLICITY {
                return Err(Error::Invalid(format!(
                    "pole {i} has multiplicity {}; 1..={MAX_POLE_MULTIPLICITY} supported",
                    p.multiplicity()
                )));
            }
            if p.coeffs.last().is_some_and(|c| c.norm() == 0.0) {
                return Err(Error::Invalid(format!("pole {i} has a zero leading coefficient")));
            }
            if poles[..i].iter().any(|q| (q.location - p.location).norm() <= TAU_MARGIN) {
                return Err(Error::Invalid(format!("pole {i} repeats an earlier location")));
            }
        }
        Ok(Self { poles })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// Total degree `m = Σ` multiplicities.
    pub fn degree(&self) -> usize {
        self.poles.iter().map(Pole::multiplicity).sum()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.poles.iter().map(|p| p.eval(z)).sum()
    }

    pub fn laurent_coeff(&self, k: usize) -> C64 {
        self.poles.iter().map(|p| p.laurent_coeff(k)).sum()
    }
}

/// `𝔉 = f_μ + r`. A target without a measure is purely rational; its
/// segment then only fixes the coordinates used by Padé constructions.
#[derive(Clone, Debug)]
pub struct TargetFunction {
    segment: Segment,
    measure: Option<MeasureM>,
    rational: RationalPart,
}

impl TargetFunction {
    pub fn new(measure: MeasureM, rational: RationalPart) -> Result<Self> {
        let segment = *measure.segment();
        for p in rational.poles() {
            if segment.distance(p.location) <= TAU_MARGIN {
                return Err(Error::Domain(format!("pole {} lies on the support", p.location)));
            }
        }
        Ok(Self { segment, measure: Some(measure), rational })
    }

    pub fn markov(measure: MeasureM) -> Self {
        Self { segment: *measure.segment(), measure: Some(measure), rational: RationalPart::empty() }
    }

    /// Purely rational target; `[a, b]` is a reference segment.
    pub fn rational_only(rational: RationalPart, a: f64, b: f64) -> Result<Self> {
        let segment = Segment::new(a, b)?;
        for p in rational.poles() {
            if segment.distance(p.location) <= TAU_MARGIN {
                return Err(Error::Domain(format!("pole {} lies on the reference segment", p.location)));
            }
        }
        Ok(Self { segment, measure: None, rational })
    }

    pub fn segment(&self) -> &Segment {
        &self.segment
    }

    pub fn measure(&self) -> Option<&MeasureM> {
        self.measure.as_ref()
    }

    pub fn rational(&self) -> &RationalPart {
        &self.rational
    }

    /// The same target with `μ̇` multiplied by `c` (rational part unchanged).
    pub fn with_scaled_measure(&self, c: C64) -> Result<Self> {
        let mut out = self.clone();
        if let Some(m) = &self.measure {
            out.measure = Some(m.scaled(c)?);
        }
        Ok(out)
    }

    /// Distance from `z` to `[a, b] ∪ Λ`.
    pub fn singular_distance(&self, z: C64) -> f64 {
        let d = if self.measure.is_some() { self.segment.distance(z) } else { f64::INFINITY };
        self.rational.poles().iter().map(|p| (z - p.location).norm()).fold(d, f64::min)
    }

    /// Largest modulus of a singularity; the target is holomorphic in
    /// `|z| > ρ`.
    pub fn singular_radius(&self) -> f64 {
        let r = if self.measure.is_some() { self.segment.a.abs().max(self.segment.b.abs()) } else { 0.0 };
        self.rational.poles().iter().map(|p| p.location.norm()).fold(r, f64::max)
    }

    /// Whether `𝔉` belongs to the exterior Hardy space (all poles in the disk).
    pub fn in_exterior_hardy(&self) -> bool {
        self.rational.poles().iter().all(|p| p.location.norm() < 1.0 - TAU_MARGIN)
    }

    fn check_point(&self, z: C64) -> Result<()> {
        if z.is_infinite() {
            return Ok(());
        }
        let d = self.singular_distance(z);
        if d <= TAU_MARGIN {
            return Err(Error::Domain(format!(
                "evaluation point {z} is at distance {d:.3e} from a singularity"
            )));
        }
        Ok(())
    }

    /// `𝔉(z)`; the Cauchy part uses Gauss-Chebyshev quadrature with node
    /// doubling, or a Chebyshev expansion close to the support.
    pub fn eval(&self, z: C64) -> Result<C64> {
        self.check_point(z)?;
        if z.is_infinite() {
            return Ok(C64::new(0.0, 0.0));
        }
        Ok(self.cauchy_part(z)? + self.rational.eval(z))
    }

    /// `f_μ(z)` alone.
    pub fn cauchy_part(&self, z: C64) -> Result<C64> {
        let Some(m) = &self.measure else { return Ok(C64::new(0.0, 0.0)) };
        if self.segment.distance(z) < NEAR_CUT {
            return self.cauchy_near(m, z);
        }
        let mut k = QUAD_NODES;
        let mut prev = cauchy_quad(m, z, k);
        while k < QUAD_NODES_MAX {
            k *= 2;
            let next = cauchy_quad(m, z, k);
            if (next - prev).norm() <= QUAD_AGREEMENT * next.norm().max(1e-300) {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::Resolution(format!("quadrature at {z} did not settle with {k} nodes")))
    }

    /// Near the support: `f_μ = (1/w) Σ c_k φ^k` with `c_k` the Chebyshev
    /// coefficients of `μ̇`.
    fn cauchy_near(&self, m: &MeasureM, z: C64) -> Result<C64> {
        let mut k = QUAD_NODES;
        loop {
            let c = m.chebyshev_coeffs(k);
            let len = effective_length(&c, 1e-15);
            if len < k / 2 || k >= QUAD_NODES_MAX {
                let w = self.segment.w(z)?;
                let v = self.segment.phi(z)?;
                let s = c[..len].iter().rev().fold(C64::new(0.0, 0.0), |acc, &ck| acc * v + ck);
                return Ok(s / w);
            }
            k *= 2;
        }
    }

    /// Samples of `𝔉` on `M` points of the unit circle.
    pub fn sample_circle(&self, m: usize) -> Result<CircleGrid> {
        self.sample_on_circle(m, 1.0)
    }

    /// Samples of `𝔉(rt)` on the `M` circle points `t`, with one fixed node
    /// count chosen by doubling at the point of `|z| = r` closest to the
    /// support.
    pub fn sample_on_circle(&self, m: usize, radius: f64) -> Result<CircleGrid> {
        let pts: Vec<C64> = crate::hardy::circle_points(m).into_iter().map(|t| t * radius).collect();
        for &z in &pts {
            self.check_point(z)?;
        }
        let Some(meas) = &self.measure else {
            return Ok(CircleGrid::from_fn(m, |t| self.rational.eval(t * radius)));
        };
        let probe = if self.segment.b.abs() >= self.segment.a.abs() { radius } else { -radius };
        let probe = C64::new(probe, 0.0);
        let mut k = QUAD_NODES;
        let mut prev = cauchy_quad(meas, probe, k);
        while k < QUAD_NODES_MAX {
            let next = cauchy_quad(meas, probe, 2 * k);
            k *= 2;
            if (next - prev).norm() <= QUAD_AGREEMENT * next.norm() {
                break;
            }
            prev = next;
        }
        let nodes = meas.nodes(k);
        let dens: Vec<C64> = meas.density_at_nodes(k).iter().map(|d| d / k as f64).collect();
        Ok(CircleGrid::from_fn(m, |t| {
            let z = t * radius;
            let f: C64 = nodes.iter().zip(&dens).map(|(&y, &d)| d / (z - y)).sum();
            f + self.rational.eval(z)
        }))
    }

    /// Moments `m_k = ∫ t^k μ̇ dω`, `k = 0..=k_max`, from `nodes` nodes.
    pub fn moments_with_nodes(&self, k_max: usize, nodes: usize) -> Result<Vec<C64>> {
        if 2 * k_max > nodes {
            return Err(Error::Resolution(format!(
                "{nodes} nodes cannot resolve moments up to order {k_max}"
            )));
        }
        let Some(m) = &self.measure else { return Ok(vec![C64::new(0.0, 0.0); k_max + 1]) };
        let ts = m.nodes(nodes);
        let dens = m.density_at_nodes(nodes);
        let mut out = vec![C64::new(0.0, 0.0); k_max + 1];
        for (&t, &d) in ts.iter().zip(&dens) {
            let mut p = d / nodes as f64;
            for slot in out.iter_mut() {
                *slot += p;
                p *= t;
            }
        }
        Ok(out)
    }

    /// Moments with enough nodes for the requested order.
    pub fn moments(&self, k_max: usize) -> Result<Vec<C64>> {
        self.moments_with_nodes(k_max, QUAD_NODES.max((2 * k_max + 2).next_power_of_two()))
    }

    /// Laurent tail `a_k = m_{k−1} + r_k`, `k = 1..=n`, with the exact
    /// evaluator attached. Requires every pole inside the disk.
    pub fn laurent_tail(&self, n: usize) -> Result<LaurentTail> {
        if !self.in_exterior_hardy() {
            return Err(Error::Domain(
                "a pole outside the unit disk puts the target outside the exterior Hardy space".into(),
            ));
        }
        let mom = self.moments(n)?;
        let coeffs: Vec<C64> = (1..=n).map(|k| mom[k - 1] + self.rational.laurent_coeff(k)).collect();
        let this = self.clone();
        let exact: crate::hardy::Evaluator = Arc::new(move |z| this.eval(z).unwrap_or(C64::new(f64::NAN, f64::NAN)));
        LaurentTail::with_exact(coeffs, self.singular_radius(), exact)
    }
}

fn cauchy_quad(m: &MeasureM, z: C64, k: usize) -> C64 {
    m.integrate(k, |t| (z - t).inv())
}

/// `𝔉(z)`.
pub fn eval_cauchy(target: &TargetFunction, z: C64) -> Result<C64> {
    target.eval(z)
}
