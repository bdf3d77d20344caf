//! The error functional `φ_n(q) = ‖𝔉 − L_q/q‖²` and its gradient.
//!
//! Everything is evaluated on a uniform grid of the unit circle. The grid
//! size is chosen from the largest modulus among the singularities of `𝔉`
//! and the zeros of `q`, and samples of `𝔉` are cached per grid size.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64 as C64;

use crate::cauchy::TargetFunction;
use crate::error::{Error, Result};
use crate::hardy::{
    check_denominator, circle_points, grid_size_for, project_on_grid, reciprocal_poly, CircleGrid, ComplexPoly,
    LaurentTail, MonicPoly,
};

/// Bound on the nonnegative-index Fourier coefficients of `u_q`, relative
/// to `max(1, ‖𝔉‖)`.
const EXTERIOR_CHECK: f64 = 1e-9;

/// Largest root modulus above 1 accepted as a zero on the circle.
const BOUNDARY_SLACK: f64 = 1e-4;

/// Allowed relative gap between the two evaluations of `φ_n`.
const VALUE_AGREEMENT: f64 = 1e-8;

/// A target together with a cache of its samples on circle grids.
pub struct Functional {
    target: TargetFunction,
    norm: f64,
    grids: Mutex<HashMap<(usize, u64), Arc<CircleGrid>>>,
}

impl std::fmt::Debug for Functional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Functional").field("target", &self.target).finish()
    }
}

impl Functional {
    /// Requires `𝔉` in the exterior Hardy space.
    pub fn new(target: TargetFunction) -> Result<Self> {
        if !target.in_exterior_hardy() {
            return Err(Error::Domain(
                "a pole outside the unit disk puts the target outside the exterior Hardy space".into(),
            ));
        }
        let this = Self { target, norm: 0.0, grids: Mutex::new(HashMap::new()) };
        let m = grid_size_for(this.target.singular_radius(), 1);
        let norm = this.samples(m, 1.0)?.norm();
        Ok(Self { norm, ..this })
    }

    pub fn target(&self) -> &TargetFunction {
        &self.target
    }

    /// `‖𝔉‖₂`.
    pub fn target_norm(&self) -> f64 {
        self.norm
    }

    /// Samples of `𝔉(rt)` on `M` circle points, cached.
    pub fn samples(&self, m: usize, radius: f64) -> Result<Arc<CircleGrid>> {
        let key = (m, radius.to_bits());
        if let Some(g) = self.grids.lock().expect("sample cache poisoned").get(&key) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(self.target.sample_on_circle(m, radius)?);
        let mut cache = self.grids.lock().expect("sample cache poisoned");
        Ok(Arc::clone(cache.entry(key).or_insert(g)))
    }

    /// Grid size resolving every integrand built from `𝔉` and `q`.
    pub fn grid_size(&self, q: &MonicPoly) -> Result<usize> {
        let r = check_denominator(q)?;
        Ok(grid_size_for(r.max(self.target.singular_radius()), q.degree()))
    }

    /// Projection data of `𝔉` at `q`. Requires the zeros of `q` in the disk.
    pub fn state(&self, q: &MonicPoly) -> Result<State> {
        let m = self.grid_size(q)?;
        let f = self.samples(m, 1.0)?;
        let proj = project_on_grid(&f, q)?;
        let l = ComplexPoly::from_raw(proj.coeffs.clone());
        let points = circle_points(m);
        let q_vals: Vec<C64> = points.iter().map(|&t| q.eval(t)).collect();
        let l_vals: Vec<C64> = points.iter().map(|&t| l.eval(t)).collect();
        let err: Vec<C64> =
            f.samples().iter().zip(&l_vals).zip(&q_vals).map(|((&fv, &lv), &qv)| fv - lv / qv).collect();
        Ok(State {
            q: q.clone(),
            l,
            gram_cond: proj.gram_cond,
            warning: proj.warning,
            target_norm: self.norm,
            points,
            q_vals,
            l_vals,
            err,
        })
    }

    /// `u_q` and `L_q` from Cauchy integrals over `|z| = r`, `ρ(𝔉) < r < 1`.
    ///
    /// On that circle `𝔉q/q̃ = L_q/q̃ + u_q`, where the first term is
    /// holomorphic in `|z| < 1` and the second vanishes at infinity, so a
    /// single FFT separates them. Zeros of `q` on the unit circle are
    /// allowed.
    pub fn contour(&self, q: &MonicPoly) -> Result<ContourSplit> {
        let n = q.degree();
        let roots = q.roots();
        // Multiple zeros on the circle come back from the eigenvalue solver
        // spread by about ε^{1/k}.
        let rmax = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if rmax > 1.0 + BOUNDARY_SLACK {
            return Err(Error::Domain(format!("denominator root of modulus {rmax:.12} lies outside the closed disk")));
        }
        let rho = self.target.singular_radius();
        let r = if rho > 0.0 { rho.sqrt() } else { 0.5 };
        let rate = (rho / r).max(r * rmax.min(1.0));
        let m = grid_size_for(rate, n);
        let f = self.samples(m, r)?;
        let qt = reciprocal_poly(q.poly(), n)?;
        let h: Vec<C64> = circle_points(m)
            .iter()
            .zip(f.samples())
            .map(|(&t, &fv)| {
                let z = t * r;
                fv * q.eval(z) / qt.eval(z)
            })
            .collect();
        let c = CircleGrid::new(h)?.fourier();
        let half = m / 2;
        let u: Vec<C64> = (1..half).map(|k| c[m - k] * r.powi(k as i32)).collect();
        let plus: Vec<C64> = (0..n).map(|k| c[k] / r.powi(k as i32)).collect();
        let mut l = vec![C64::new(0.0, 0.0); n];
        for (i, &qi) in qt.coeffs().iter().enumerate().take(n) {
            for (k, &ck) in plus.iter().enumerate().take(n - i) {
                l[i + k] += qi * ck;
            }
        }
        Ok(ContourSplit { l: ComplexPoly::from_raw(l), uq: LaurentTail::new(u, rho) })
    }

    /// `u_q = (𝔉q − L_q)/q̃` on the grid, checked to lie in the exterior
    /// Hardy space.
    pub fn compute_uq(&self, q: &MonicPoly) -> Result<LaurentTail> {
        self.state(q)?.uq()
    }

    /// `φ_n(q)` as `‖u_q‖²` from the contour split, checked against
    /// `‖𝔉 − L_q/q‖²` from the Gram system.
    pub fn phi_n(&self, q: &MonicPoly) -> Result<f64> {
        Ok(self.evaluate(q)?.value)
    }

    /// Both evaluations of `φ_n(q)` together with the projection data.
    pub fn evaluate(&self, q: &MonicPoly) -> Result<Evaluation> {
        let state = self.state(q)?;
        let split = self.contour(q)?;
        let value = split.uq.norm().powi(2);
        let direct = state.value_direct();
        let gap = (value - direct).abs();
        if gap > VALUE_AGREEMENT * value.max(direct) + (1e-12 * self.norm).powi(2) {
            return Err(Error::Consistency(format!(
                "‖𝔉 − L_q/q‖² = {direct:.16e} but ‖u_q‖² = {value:.16e}"
            )));
        }
        Ok(Evaluation { value, value_direct: direct, state })
    }

    /// `∂φ_n/∂q_k`, `k = 0..n−1`.
    pub fn gradient(&self, q: &MonicPoly) -> Result<Vec<C64>> {
        Ok(self.state(q)?.gradient())
    }
}

/// `L_q` and `u_q` from the contour split.
#[derive(Clone, Debug)]
pub struct ContourSplit {
    pub l: ComplexPoly,
    pub uq: LaurentTail,
}

/// Both evaluations of `φ_n(q)`.
#[derive(Debug)]
pub struct Evaluation {
    /// `‖u_q‖²`.
    pub value: f64,
    /// `‖𝔉 − L_q/q‖²`.
    pub value_direct: f64,
    pub state: State,
}

impl Evaluation {
    /// Relative gap between the two evaluations.
    pub fn discrepancy(&self) -> f64 {
        let scale = self.value.max(self.value_direct);
        if scale > 0.0 {
            (self.value - self.value_direct).abs() / scale
        } else {
            0.0
        }
    }
}

/// Projection of `𝔉` onto `V_q` sampled on the circle.
#[derive(Clone, Debug)]
pub struct State {
    pub q: MonicPoly,
    /// `L_q`, with `n` coefficients.
    pub l: ComplexPoly,
    pub gram_cond: f64,
    pub warning: Option<String>,
    target_norm: f64,
    points: Vec<C64>,
    q_vals: Vec<C64>,
    l_vals: Vec<C64>,
    /// `𝔉 − L_q/q`.
    err: Vec<C64>,
}

impl State {
    pub fn degree(&self) -> usize {
        self.q.degree()
    }

    pub fn grid_len(&self) -> usize {
        self.points.len()
    }

    pub(crate) fn points(&self) -> &[C64] {
        &self.points
    }

    pub(crate) fn q_values(&self) -> &[C64] {
        &self.q_vals
    }

    pub(crate) fn l_values(&self) -> &[C64] {
        &self.l_vals
    }

    /// Samples of `𝔉 − L_q/q`.
    pub fn error_values(&self) -> &[C64] {
        &self.err
    }

    pub fn error_grid(&self) -> CircleGrid {
        CircleGrid::new(self.err.clone()).expect("grid is nonempty")
    }

    pub(crate) fn target_norm(&self) -> f64 {
        self.target_norm
    }

    /// Grid mean of `a · conj(b)`.
    pub(crate) fn mean(&self, a: impl Fn(usize) -> C64, b: impl Fn(usize) -> C64) -> C64 {
        let m = self.points.len();
        (0..m).map(|i| a(i) * b(i).conj()).sum::<C64>() / m as f64
    }

    /// `‖𝔉 − L_q/q‖²`.
    pub fn value_direct(&self) -> f64 {
        self.err.iter().map(|e| e.norm_sqr()).sum::<f64>() / self.err.len() as f64
    }

    /// `u_q = (𝔉 − L_q/q)·q/q̃`, with the nonnegative-index coefficients
    /// required to vanish.
    pub fn uq(&self) -> Result<LaurentTail> {
        let n = self.degree();
        let qt = reciprocal_poly(self.q.poly(), n)?;
        let u: Vec<C64> = self
            .points
            .iter()
            .zip(&self.err)
            .zip(&self.q_vals)
            .map(|((&t, &e), &qv)| e * qv / qt.eval(t))
            .collect();
        let grid = CircleGrid::new(u)?;
        let c = grid.fourier();
        let m = grid.len();
        let leak = c[..=m / 2].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if leak > EXTERIOR_CHECK * self.target_norm.max(1.0) {
            return Err(Error::Consistency(format!(
                "u_q has a nonnegative-index Fourier coefficient of size {leak:.3e}; the projection is inconsistent"
            )));
        }
        Ok(LaurentTail::from_grid(&grid, m / 2 - 1))
    }

    /// `g_k = ⟨z^k L_q/q², 𝔉 − L_q/q⟩`. With `q_k = x_k + i y_k`,
    /// `∂φ_n/∂x_k = 2 Re g_k` and `∂φ_n/∂y_k = −2 Im g_k`.
    pub fn gradient(&self) -> Vec<C64> {
        let n = self.degree();
        let base: Vec<C64> =
            self.l_vals.iter().zip(&self.q_vals).map(|(&l, &q)| l / (q * q)).collect();
        (0..n)
            .map(|k| self.mean(|i| self.points[i].powu(k as u32) * base[i], |i| self.err[i]))
            .collect()
    }

    /// Gradient of `φ_n` in the real coordinates
    /// `(Re q_0, …, Re q_{n−1}, Im q_0, …, Im q_{n−1})`.
    pub fn real_gradient(&self) -> Vec<f64> {
        let g = self.gradient();
        g.iter().map(|v| 2.0 * v.re).chain(g.iter().map(|v| -2.0 * v.im)).collect()
    }

    /// Euclidean norm of the real gradient.
    pub fn grad_norm(&self) -> f64 {
        self.real_gradient().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest `|⟨𝔉 − L_q/q, z^j/q⟩| / (‖𝔉‖ ‖z^j/q‖)` over `j < n`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.degree();
        (0..n)
            .map(|j| {
                let basis = |i: usize| self.points[i].powu(j as u32) / self.q_vals[i];
                let ip = self.mean(|i| self.err[i], basis);
                let bn = self.mean(basis, basis).re.sqrt();
                ip.norm() / (self.target_norm.max(1e-300) * bn)
            })
            .fold(0.0, f64::max)
    }
}

/// `u_q` for a fresh functional.
pub fn compute_uq(target: &TargetFunction, q: &MonicPoly) -> Result<LaurentTail> {
    Functional::new(target.clone())?.compute_uq(q)
}

/// `φ_n(q)` for a fresh functional.
pub fn phi_n(target: &TargetFunction, q: &MonicPoly) -> Result<f64> {
    Functional::new(target.clone())?.phi_n(q)
}

/// `∂φ_n/∂q_k` for a fresh functional.
pub fn gradient(target: &TargetFunction, q: &MonicPoly) -> Result<Vec<C64>> {
    Functional::new(target.clone())?.gradient(q)
}
