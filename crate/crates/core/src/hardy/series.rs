//! Laurent tails, power series and sampled functions on the unit circle.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::config::TAU_SERIES;
use crate::error::{Error, Result};

/// Closed-form evaluator attached to a truncated series.
pub type Evaluator = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

/// In-place DFT. The forward transform uses `exp(−2πijk/M)`; neither
/// direction is normalized.
pub fn dft(data: &mut [C64], inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let plan = if inverse {
        planner.plan_fft_inverse(data.len())
    } else {
        planner.plan_fft_forward(data.len())
    };
    plan.process(data);
}

/// The `M` equispaced points `exp(2πij/M)` of the unit circle.
pub fn circle_points(m: usize) -> Vec<C64> {
    (0..m)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64))
        .collect()
}

// ---------------------------------------------------------------------------
// LaurentTail
// ---------------------------------------------------------------------------

/// Element of the exterior Hardy space: `f(z) = Σ_{k≥1} a_k z^{-k}`,
/// truncated after `N` terms.
///
/// `coeffs[k-1]` holds `a_k`. The optional evaluator gives exact values for
/// `|z| > rho`.
#[derive(Clone)]
pub struct LaurentTail {
    coeffs: Vec<C64>,
    rho: f64,
    exact: Option<Evaluator>,
}

impl fmt::Debug for LaurentTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaurentTail")
            .field("len", &self.coeffs.len())
            .field("rho", &self.rho)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl LaurentTail {
    pub fn new(coeffs: Vec<C64>, rho: f64) -> Self {
        Self { coeffs, rho, exact: None }
    }

    /// Attaches a closed-form evaluator after checking it against the
    /// truncated series on `|z| = 2`.
    pub fn with_exact(coeffs: Vec<C64>, rho: f64, exact: Evaluator) -> Result<Self> {
        let tail = Self { coeffs, rho, exact: None };
        let worst = circle_points(64)
            .iter()
            .map(|&t| {
                let z = t * 2.0;
                let e = exact(z);
                (tail.eval_series(z) - e).norm() / e.norm().max(1.0)
            })
            .fold(0.0, f64::max);
        if worst > TAU_SERIES {
            return Err(Error::Consistency(format!(
                "truncated series differs from the exact evaluator by {worst:.3e} on |z| = 2"
            )));
        }
        Ok(Self { exact: Some(exact), ..tail })
    }

    /// Monomial `c z^{-k}`.
    pub fn monomial(k: usize, c: C64) -> Self {
        assert!(k >= 1, "exterior monomials start at z^-1");
        let mut coeffs = vec![C64::new(0.0, 0.0); k];
        coeffs[k - 1] = c;
        Self::new(coeffs, 0.0)
    }

    /// `a_1..a_N`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// `a_k`, zero outside the stored range.
    pub fn coeff(&self, k: usize) -> C64 {
        if k == 0 {
            return C64::new(0.0, 0.0);
        }
        self.coeffs.get(k - 1).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn exact(&self) -> Option<&Evaluator> {
        self.exact.as_ref()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Truncated series value.
    pub fn eval_series(&self, z: C64) -> C64 {
        let w = z.inv();
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| (acc + c) * w)
    }

    /// Exact value when available, otherwise the truncated series.
    pub fn eval(&self, z: C64) -> C64 {
        match &self.exact {
            Some(f) if z.norm() > self.rho => f(z),
            _ => self.eval_series(z),
        }
    }

    /// Samples on `M` circle points. Uses the exact evaluator when present,
    /// otherwise an FFT of the (aliased) coefficients.
    pub fn sample(&self, m: usize) -> CircleGrid {
        if let Some(f) = &self.exact {
            return CircleGrid::from_fn(m, |t| f(t));
        }
        let mut data = vec![C64::new(0.0, 0.0); m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            data[(i + 1) % m] += a;
        }
        dft(&mut data, false);
        CircleGrid { samples: data }
    }

    /// Negative-index Fourier coefficients `a_1..a_n` of a sampled function.
    pub fn from_grid(grid: &CircleGrid, n: usize) -> Self {
        let m = grid.len();
        let coeffs = grid.fourier();
        let n = n.min(m / 2);
        Self::new((1..=n).map(|k| coeffs[m - k]).collect(), 0.0)
    }

    /// `f^σ(z) = (1/z) conj(f(1/conj z))`, an element of `H²`.
    pub fn sigma(&self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect(), self.rho)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::new(
            (1..=n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
            self.rho.max(other.rho),
        )
    }
}

// ---------------------------------------------------------------------------
// PowerSeries
// ---------------------------------------------------------------------------

/// Element of `H²`: `g(z) = Σ_{k≥0} b_k z^k`, truncated.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<C64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Inverse of [`LaurentTail::sigma`].
    pub fn sigma(&self) -> LaurentTail {
        LaurentTail::new(self.coeffs.iter().map(|c| c.conj()).collect(), 0.0)
    }
}

// ---------------------------------------------------------------------------
// CircleGrid
// ---------------------------------------------------------------------------

/// Samples of a function at `exp(2πij/M)`, `M` a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleGrid {
    samples: Vec<C64>,
}

impl CircleGrid {
    pub fn new(samples: Vec<C64>) -> Result<Self> {
        let m = samples.len();
        if m < 4 || !m.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "circle grids need a power-of-two size ≥ 4, got {m}"
            )));
        }
        Ok(Self { samples })
    }

    pub fn from_fn(m: usize, f: impl Fn(C64) -> C64) -> Self {
        assert!(m >= 4 && m.is_power_of_two(), "grid size must be a power of two");
        Self { samples: circle_points(m).into_iter().map(f).collect() }
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn points(&self) -> Vec<C64> {
        circle_points(self.len())
    }

    /// Pointwise map.
    pub fn map(&self, f: impl Fn(C64, C64) -> C64) -> Self {
        let pts = self.points();
        Self { samples: self.samples.iter().zip(pts).map(|(&v, t)| f(t, v)).collect() }
    }

    /// Pointwise combination of two grids of equal size.
    pub fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self {
            samples: self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "grid sizes differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Fourier coefficients `c_k`, stored at index `k mod M`.
    pub fn fourier(&self) -> Vec<C64> {
        let m = self.len() as f64;
        let mut data = self.samples.clone();
        dft(&mut data, false);
        data.iter_mut().for_each(|c| *c /= m);
        data
    }

    /// Trapezoid approximation of `∫ f conj(g) |dτ|/2π`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_size(other)?;
        let sum: C64 = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum();
        Ok(sum / self.len() as f64)
    }

    pub fn norm(&self) -> f64 {
        (self.samples.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.len() as f64).sqrt()
    }

    pub fn min_modulus(&self) -> f64 {
        self.samples.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Every second sample: the same function on a grid of half the size.
    pub fn decimate(&self, factor: usize) -> Self {
        Self { samples: self.samples.iter().step_by(factor).copied().collect() }
    }
}

/// Operands of the `L²(𝕋)` scalar product.
pub trait InnerProduct {
    fn inner(&self, other: &Self) -> Result<C64>;
}

impl InnerProduct for LaurentTail {
    /// Coefficient pairing; the shorter tail is padded with zeros.
    fn inner(&self, other: &Self) -> Result<C64> {
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum())
    }
}

impl InnerProduct for CircleGrid {
    fn inner(&self, other: &Self) -> Result<C64> {
        CircleGrid::inner(self, other)
    }
}

/// `⟨f, g⟩ = ∫ f conj(g) |dτ|/2π`, conjugate-linear in `g`.
pub fn inner_product<T: InnerProduct>(f: &T, g: &T) -> Result<C64> {
    f.inner(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn monomials_are_orthonormal() {
        let z1 = LaurentTail::monomial(1, c(1.0, 0.0));
        let z2 = LaurentTail::monomial(2, c(1.0, 0.0));
        assert_eq!(inner_product(&z1, &z1).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&z1, &z2).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn parseval_small_example() {
        let f = LaurentTail::new(vec![c(2.0, 0.0), c(0.0, 3.0)], 0.0);
        assert!((inner_product(&f, &f).unwrap() - c(13.0, 0.0)).norm() < 1e-15);
        let g = f.sample(16);
        assert!((inner_product(&g, &g).unwrap() - c(13.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn sigma_of_one_over_z_is_one() {
        let s = LaurentTail::monomial(1, c(1.0, 0.0)).sigma();
        assert_eq!(s.coeffs(), &[c(1.0, 0.0)]);
        let back = PowerSeries::new(vec![c(0.5, -2.0)]).sigma();
        assert_eq!(back.coeffs(), &[c(0.5, 2.0)]);
    }

    #[test]
    fn sampling_matches_series() {
        let f = LaurentTail::new(vec![c(1.0, 0.5), c(-0.25, 0.0), c(0.0, 0.125)], 0.0);
        let g = f.sample(8);
        for (t, v) in g.points().iter().zip(g.samples()) {
            assert!((f.eval_series(*t) - v).norm() < 1e-14);
        }
        let back = LaurentTail::from_grid(&g, 3);
        for k in 1..=3 {
            assert!((back.coeff(k) - f.coeff(k)).norm() < 1e-14, "{k}: {} vs {}", back.coeff(k), f.coeff(k));
        }
    }

    #[test]
    fn grid_size_mismatch_is_reported() {
        let a = CircleGrid::from_fn(8, |z| z);
        let b = CircleGrid::from_fn(16, |z| z);
        assert!(matches!(a.inner(&b), Err(Error::Dimension(_))));
        assert!(CircleGrid::new(vec![c(1.0, 0.0); 6]).is_err());
    }

    #[test]
    fn exact_evaluator_is_checked() {
        let coeffs: Vec<C64> = (1..60).map(|k| c(0.5f64.powi(k - 1), 0.0)).collect();
        let exact: Evaluator = Arc::new(|z| (z - 0.5).inv());
        assert!(LaurentTail::with_exact(coeffs.clone(), 0.5, exact).is_ok());
        let wrong: Evaluator = Arc::new(|z| (z - 0.4).inv());
        assert!(LaurentTail::with_exact(coeffs, 0.5, wrong).is_err());
    }
}
