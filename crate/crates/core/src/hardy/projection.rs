//! Orthogonal projection onto `V_q = {p/q : deg p < n}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::poly::{ComplexPoly, MonicPoly};
use super::series::{CircleGrid, LaurentTail};
use crate::config::{CIRCLE_GRID_MAX, CIRCLE_GRID_MIN, GRAM_COND_WARN, TAU_MARGIN};
use crate::error::{Error, Result};

/// Numerator `L_q` of the projection `L_q/q` with solver diagnostics.
#[derive(Clone, Debug)]
pub struct Projection {
    /// Coefficients `l_0..l_{n-1}` (not trimmed).
    pub coeffs: Vec<C64>,
    /// 2-norm condition number of the Gram matrix.
    pub gram_cond: f64,
    /// Set when the Gram matrix is ill-conditioned.
    pub warning: Option<String>,
}

impl Projection {
    pub fn poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.clone())
    }
}

/// Smallest power-of-two grid on which the trapezoid rule resolves
/// functions analytic in `r < |z| < 1/r` to about 1e-17.
pub fn grid_size_for(r: f64, n: usize) -> usize {
    let need = if r <= 0.0 {
        0.0
    } else {
        40.0 / -r.min(1.0 - 1e-12).ln()
    };
    let m = (need.ceil() as usize).max(CIRCLE_GRID_MIN).max(16 * n);
    m.next_power_of_two().min(CIRCLE_GRID_MAX)
}

/// Checks that every zero of `q` lies in `|z| < 1 − TAU_MARGIN` and returns
/// the largest modulus.
pub fn check_denominator(q: &MonicPoly) -> Result<f64> {
    let r = q.roots().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if r >= 1.0 - TAU_MARGIN {
        return Err(Error::Domain(format!(
            "denominator root of modulus {r:.12} is not inside the disk"
        )));
    }
    Ok(r)
}

/// Gram matrix `G[j][k] = ⟨z^k/q, z^j/q⟩` from values of `q` on the grid.
pub fn gram_matrix(qv: &[C64], n: usize) -> DMatrix<C64> {
    let m = qv.len();
    let pts = super::series::circle_points(m);
    let w: Vec<f64> = qv.iter().map(|v| 1.0 / v.norm_sqr()).collect();
    // Toeplitz: the entry depends on k − j only.
    let toe: Vec<C64> = (0..(2 * n).max(1) - 1)
        .map(|idx| {
            let d = (idx as i64 - (n as i64 - 1)).rem_euclid(m as i64) as usize;
            let s: C64 = w.iter().enumerate().map(|(i, &wi)| pts[(d * i) % m] * wi).sum();
            s / m as f64
        })
        .collect();
    DMatrix::from_fn(n, n, |j, k| toe[(k as i64 - j as i64 + n as i64 - 1) as usize])
}

/// Projection of sampled `f` onto `V_q`: solves the Gram system
/// `Σ_k l_k ⟨z^k/q, z^j/q⟩ = ⟨f, z^j/q⟩`, `j = 0..n−1`.
pub fn project_on_grid(f: &CircleGrid, q: &MonicPoly) -> Result<Projection> {
    check_denominator(q)?;
    let n = q.degree();
    let m = f.len();
    let pts = f.points();
    let qv: Vec<C64> = pts.iter().map(|&t| q.eval(t)).collect();
    let g = gram_matrix(&qv, n);
    let rhs = DVector::from_fn(n, |j, _| {
        let s: C64 = f
            .samples()
            .iter()
            .zip(&pts)
            .zip(&qv)
            .map(|((&fv, &t), &qt)| fv * (t.powu(j as u32) / qt).conj())
            .sum();
        s / m as f64
    });
    solve_gram(g, rhs)
}

pub(crate) fn solve_gram(g: DMatrix<C64>, rhs: DVector<C64>) -> Result<Projection> {
    let sv = g.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let gram_cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let sol = g
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Consistency("singular Gram matrix".into()))?;
    let warning = (gram_cond > GRAM_COND_WARN)
        .then(|| format!("Gram matrix condition number {gram_cond:.3e}"));
    Ok(Projection { coeffs: sol.iter().copied().collect(), gram_cond, warning })
}

/// Projection of a Laurent tail onto `V_q`.
///
/// ```
/// use num_complex::Complex64 as C64;
/// use ratl2::hardy::{project_vq, LaurentTail, MonicPoly};
/// let c = 0.3;
/// let coeffs = (1..200).map(|k| C64::new(c_pow(c, k - 1), 0.0)).collect();
/// # fn c_pow(c: f64, k: i32) -> f64 { c.powi(k) }
/// let f = LaurentTail::new(coeffs, c);
/// let q = MonicPoly::from_roots(&[C64::new(c, 0.0)]);
/// let l = project_vq(&f, &q).unwrap();
/// assert!((l.coeffs[0] - 1.0).norm() < 1e-12);
/// ```
pub fn project_vq(f: &LaurentTail, q: &MonicPoly) -> Result<Projection> {
    let r = check_denominator(q)?;
    let m = grid_size_for(r.max(f.rho()), q.degree()).max((2 * f.len()).next_power_of_two());
    project_on_grid(&f.sample(m.min(CIRCLE_GRID_MAX)), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn one_over_z_squared_projects_to_zero_on_z() {
        let f = LaurentTail::monomial(2, c(1.0, 0.0));
        let q = MonicPoly::from_roots(&[c(0.0, 0.0)]);
        let l = project_vq(&f, &q).unwrap();
        assert!(l.coeffs[0].norm() < 1e-15);
    }

    #[test]
    fn gram_of_single_pole() {
        // ‖1/(z − s)‖² = 1/(1 − |s|²)
        let s = c(0.5, 0.2);
        let q = MonicPoly::from_roots(&[s]);
        let pts = super::super::series::circle_points(1024);
        let qv: Vec<C64> = pts.iter().map(|&t| q.eval(t)).collect();
        let g = gram_matrix(&qv, 1);
        assert!((g[(0, 0)].re - 1.0 / (1.0 - s.norm_sqr())).abs() < 1e-13);
    }

    #[test]
    fn boundary_root_is_rejected() {
        let f = LaurentTail::monomial(1, c(1.0, 0.0));
        let q = MonicPoly::from_roots(&[c(1.0, 0.0)]);
        assert!(matches!(project_vq(&f, &q), Err(Error::Domain(_))));
    }
}
