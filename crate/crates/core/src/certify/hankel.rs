//! Outer factors, the Hankel operator with symbol `s_q = L_q/(o_q q q̃)`
//! and the de la Vallée-Poussin lower bound for its singular values.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::criterion::{horner, Approximant};
use crate::cauchy::TargetFunction;
use crate::config::{CIRCLE_GRID_MAX, TAU_ZERO, WINDING_GRID};
use crate::critical::CriticalPointRecord;
use crate::error::{Error, Result};
use crate::hardy::{circle_points, dft, reciprocal_poly, winding_number, CircleGrid, ComplexPoly};

/// Stability required of the leading singular values under doubling of
/// the truncation, relative to the largest one.
const SIGMA_STABILITY: f64 = 1e-6;

/// Largest Hankel truncation tried.
const MAX_TRUNCATION: usize = 4096;

/// Relative size of the last retained symbol coefficient at which the
/// circle grid is considered fine enough.
const SYMBOL_TAIL: f64 = 1e-15;

/// Zero-free function on the closed disk with prescribed modulus on the
/// circle, normalized positive at the origin.
#[derive(Clone, Debug)]
pub struct OuterFactor {
    boundary: CircleGrid,
    /// Taylor coefficients of `log o`.
    log_coeffs: Vec<C64>,
}

impl OuterFactor {
    /// Values on the circle grid of the input.
    pub fn boundary(&self) -> &CircleGrid {
        &self.boundary
    }

    /// `o(z)` for `|z| ≤ 1`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::Domain(format!("outer factor requested at |z| = {} > 1", z.norm())));
        }
        Ok(horner(&self.log_coeffs, z).exp())
    }
}

/// The outer factor of `w`: `exp` of the analytic completion of `log|w|`,
/// the harmonic conjugate taken by the Fourier multiplier `−i sgn(k)`.
///
/// ```
/// use num_complex::Complex64 as C64;
/// use ratl2::certify::outer_factor;
/// use ratl2::hardy::CircleGrid;
/// let w = CircleGrid::from_fn(64, |z| z);
/// let o = outer_factor(&w).unwrap();
/// assert!(o.boundary().samples().iter().all(|v| (v - C64::new(1.0, 0.0)).norm() < 1e-14));
/// ```
pub fn outer_factor(w: &CircleGrid) -> Result<OuterFactor> {
    let scale = w.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = w.min_modulus();
    if !(floor > TAU_ZERO * scale) {
        return Err(Error::Inapplicable(format!("w vanishes on the circle (minimum modulus {floor:.3e})")));
    }
    let m = w.len();
    let logs = CircleGrid::new(w.samples().iter().map(|v| C64::new(v.norm().ln(), 0.0)).collect())?;
    let c = logs.fourier();
    let mut a = vec![C64::new(0.0, 0.0); m];
    a[0] = C64::new(c[0].re, 0.0);
    for k in 1..m / 2 {
        a[k] = c[k] * 2.0;
    }
    a[m / 2] = C64::new(c[m / 2].re, 0.0);
    let mut vals = a.clone();
    dft(&mut vals, true);
    let boundary = CircleGrid::new(vals.into_iter().map(|v| v.exp()).collect())?;
    a.truncate(m / 2 + 1);
    Ok(OuterFactor { boundary, log_coeffs: a })
}

/// Samples on the circle of the objects attached to a critical point.
#[derive(Clone, Debug)]
pub struct HankelSymbol {
    pub degree: usize,
    /// `𝔉 − L_q/q`.
    pub error: CircleGrid,
    /// `w_q` with `𝔉 − L_q/q = (q̃ q̌/q) w_q^σ`.
    pub w: CircleGrid,
    pub outer: OuterFactor,
    /// `s_q = L_q/(o_q q q̃)`.
    pub symbol: CircleGrid,
    /// `ŝ(−1), ŝ(−2), …`.
    pub negative_coeffs: Vec<C64>,
    q_tilde: CircleGrid,
}

impl HankelSymbol {
    /// `Π/(q̃ o_q)` on the same grid.
    pub fn comparison_samples(&self, pi: &dyn Approximant) -> CircleGrid {
        let o = self.outer.boundary().samples();
        let qt = self.q_tilde.samples();
        let pts = circle_points(self.symbol.len());
        let vals = pts.iter().enumerate().map(|(j, &t)| pi.value(t) / (qt[j] * o[j])).collect();
        CircleGrid::new(vals).expect("grid size is a power of two")
    }
}

/// Builds `s_q` for a critical point, doubling the grid from
/// `WINDING_GRID` until its negative Fourier coefficients have decayed.
pub fn hankel_symbol(target: &TargetFunction, record: &CriticalPointRecord) -> Result<HankelSymbol> {
    let q = record.q()?;
    let l = record.l();
    let n = record.degree;
    let qt = reciprocal_poly(q.poly(), n)?;
    let mut m = WINDING_GRID;
    loop {
        let s = symbol_on(target, &l, q.poly(), &qt, n, m)?;
        let c = &s.negative_coeffs;
        let peak = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let tail = c[c.len() - 8..].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if tail <= SYMBOL_TAIL * peak.max(f64::MIN_POSITIVE) || m >= CIRCLE_GRID_MAX {
            return Ok(s);
        }
        m *= 2;
    }
}

fn symbol_on(
    target: &TargetFunction,
    l: &ComplexPoly,
    q: &ComplexPoly,
    qt: &ComplexPoly,
    n: usize,
    m: usize,
) -> Result<HankelSymbol> {
    let pts = circle_points(m);
    let f = target.sample_circle(m)?;
    let mut e = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    let mut qt_vals = Vec::with_capacity(m);
    let mut q_vals = Vec::with_capacity(m);
    let mut l_vals = Vec::with_capacity(m);
    for (j, &t) in pts.iter().enumerate() {
        let (qv, qtv, lv) = (q.eval(t), qt.eval(t), l.eval(t));
        let ev = f.samples()[j] - lv / qv;
        let w_sigma = ev * qv / (qtv * qv.conj());
        e.push(ev);
        w.push(t.conj() * w_sigma.conj());
        qt_vals.push(qtv);
        q_vals.push(qv);
        l_vals.push(lv);
    }
    let w = CircleGrid::new(w)?;
    let outer = outer_factor(&w)?;
    let o = outer.boundary().samples();
    let s: Vec<C64> = (0..m).map(|j| l_vals[j] / (o[j] * q_vals[j] * qt_vals[j])).collect();
    let symbol = CircleGrid::new(s)?;
    let fc = symbol.fourier();
    let negative_coeffs = (1..=m / 4).map(|k| fc[m - k]).collect();
    Ok(HankelSymbol {
        degree: n,
        error: CircleGrid::new(e)?,
        w,
        outer,
        symbol,
        negative_coeffs,
        q_tilde: CircleGrid::new(qt_vals)?,
    })
}

/// Singular values of a Hankel operator and the truncation that resolved
/// them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HankelSigma {
    /// Non-increasing.
    pub values: Vec<f64>,
    pub truncation: usize,
    pub n: usize,
}

impl HankelSigma {
    /// `σ_{n−1}`, the approximation number by functions with `n − 1` poles.
    pub fn sigma_n_minus_1(&self) -> f64 {
        self.values.get(self.n - 1).copied().unwrap_or(0.0)
    }
}

/// Singular values of the `N × N` Hankel matrix `[ŝ(−1−j−k)]`.
///
/// `negative_coeffs[k]` is `ŝ(−1−k)`; missing coefficients are zero. `N`
/// starts at `truncation` (default `max(8n, 128)`) and doubles until the
/// leading `n` values agree to `1e−6` relative to `σ_0`.
///
/// ```
/// use num_complex::Complex64 as C64;
/// use ratl2::certify::hankel_sigma;
/// let s = hankel_sigma(&[C64::new(0.0, 3.0)], 1, None).unwrap();
/// assert!((s.values[0] - 3.0).abs() < 1e-14 && s.values[1] == 0.0);
/// ```
pub fn hankel_sigma(negative_coeffs: &[C64], n: usize, truncation: Option<usize>) -> Result<HankelSigma> {
    if n == 0 {
        return Err(Error::Invalid("hankel_sigma needs n ≥ 1".into()));
    }
    let mut size = truncation.unwrap_or((8 * n).max(128));
    if size < 8 * n {
        return Err(Error::Invalid(format!("truncation {size} below 8n = {}", 8 * n)));
    }
    let mut prev = singular_values(negative_coeffs, size);
    loop {
        if size >= negative_coeffs.len() {
            // Every coefficient is already inside the matrix.
            return Ok(HankelSigma { values: prev, truncation: size, n });
        }
        let next_size = 2 * size;
        if next_size > MAX_TRUNCATION {
            return Err(Error::Resolution(format!("Hankel singular values not stable up to N = {size}")));
        }
        let next = singular_values(negative_coeffs, next_size);
        let scale = next[0].max(f64::MIN_POSITIVE);
        let stable = (0..n).all(|k| (next[k] - prev[k]).abs() <= SIGMA_STABILITY * scale);
        prev = next;
        size = next_size;
        if stable {
            return Ok(HankelSigma { values: prev, truncation: size, n });
        }
    }
}

fn singular_values(c: &[C64], size: usize) -> Vec<f64> {
    let h = DMatrix::from_fn(size, size, |j, k| c.get(j + k).copied().unwrap_or_default());
    let mut s: Vec<f64> = h.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Lower bound on `σ_{n−1}` from a comparison function `g` with at most
/// `n − 1` poles in the disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DvpBound {
    /// `wn(s − g) ≤ 1 − 2n`, so `σ_{n−1} ≥ min_𝕋 |s − g|`.
    Certified { bound: f64, winding: i64 },
    /// `s − g` vanishes on the grid; zero is the only bound.
    Trivial,
    /// The winding hypothesis fails.
    Inapplicable { winding: i64 },
}

impl DvpBound {
    pub fn value(&self) -> Option<f64> {
        match *self {
            DvpBound::Certified { bound, .. } => Some(bound),
            DvpBound::Trivial => Some(0.0),
            DvpBound::Inapplicable { .. } => None,
        }
    }
}

/// `σ_{n−1} ≥ inf_𝕋 |s − g|` whenever `wn(s − g) ≤ 1 − 2n`.
pub fn dvp_lower_bound(symbol: &CircleGrid, g: &CircleGrid, n: usize) -> Result<DvpBound> {
    let diff = symbol.zip_with(g, |s, g| s - g)?;
    let scale = symbol.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = diff.min_modulus();
    if floor <= TAU_ZERO * scale {
        return Ok(DvpBound::Trivial);
    }
    let winding = winding_number(&diff)?;
    if winding <= 1 - 2 * n as i64 {
        Ok(DvpBound::Certified { bound: floor, winding })
    } else {
        Ok(DvpBound::Inapplicable { winding })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn outer_function_is_a_fixed_point() {
        let g = |z: C64| (z * 0.3).exp() * (c(2.0, 0.0) + z * 0.5);
        let o = outer_factor(&CircleGrid::from_fn(256, g)).unwrap();
        for (t, v) in circle_points(256).iter().zip(o.boundary().samples()) {
            assert!((v - g(*t)).norm() < 1e-12);
        }
        let z = c(0.2, -0.5);
        assert!((o.eval(z).unwrap() - g(z)).norm() < 1e-12);
    }

    #[test]
    fn inner_zero_is_removed() {
        let g = |z: C64| c(1.5, 0.0) + z * z * 0.25;
        let w = CircleGrid::from_fn(256, |z| (z - 0.5) * g(z));
        let o = outer_factor(&w).unwrap();
        for (a, b) in w.samples().iter().zip(o.boundary().samples()) {
            assert!((a.norm() - b.norm()).abs() < 1e-12);
        }
        // (z − ½) = −(1 − z/2)·(inner factor), with outer part 1 − z/2.
        let z = c(0.1, 0.3);
        assert!((o.eval(z).unwrap() - (c(1.0, 0.0) - z * 0.5) * g(z)).norm() < 1e-12);
        assert!(matches!(outer_factor(&CircleGrid::from_fn(64, |z| z - 1.0)), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn kronecker_rank() {
        // Two poles inside the disk: rank two.
        let coeffs: Vec<C64> = (0..200).map(|k| c(0.5f64.powi(k), 0.0) + c(0.0, -0.3f64.powi(k))).collect();
        let s = hankel_sigma(&coeffs, 2, None).unwrap();
        assert!(s.values[1] > 1e-3);
        assert!(s.values[2] < 1e-12 * s.values[0]);
        assert!(s.values.windows(2).all(|w| w[0] >= w[1] && w[1] >= 0.0));
        assert!(matches!(hankel_sigma(&coeffs, 2, Some(8)), Err(Error::Invalid(_))));
    }

    #[test]
    fn trivial_and_inapplicable_bounds() {
        let s = CircleGrid::from_fn(64, |z| z.inv());
        assert_eq!(dvp_lower_bound(&s, &s, 1).unwrap(), DvpBound::Trivial);
        let g = CircleGrid::from_fn(64, |_| c(0.5, 0.0));
        assert_eq!(dvp_lower_bound(&s, &g, 1).unwrap(), DvpBound::Certified { bound: 0.5, winding: -1 });
        assert_eq!(dvp_lower_bound(&s, &g, 2).unwrap(), DvpBound::Inapplicable { winding: -1 });
    }
}
