//! Second derivatives of `φ_n` at a critical point.
//!
//! With `ν_j = (q ∂L_q/∂q_j − z^j L_q)/q̃` and `w_q^σ = (𝔉 − L_q/q)q/(q̃ q̌)`
//! the holomorphic second derivatives are
//! `A_{jk} = 2⟨z^j ν_k/q, w_q^σ⟩` and the mixed ones
//! `B_{jk} = ⟨ν_j/q, ν_k/q⟩`; the Hessian form is
//! `𝒬(v) = 2 Re Σ (v_j v_k A_{jk} + v_j conj(v_k) B_{jk})`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::functional::{Functional, State};
use crate::error::{Error, Result};
use crate::hardy::{reciprocal_poly, CircleGrid, ComplexPoly, MonicPoly};

/// Bound on the remainder of `q ∂L_q/∂q_j − z^j L_q` modulo `q̃`, relative
/// to the dividend.
const DIVISION_CHECK: f64 = 1e-9;

/// Bound on the negative-index coefficients of `w_q`, relative to `‖w_q‖`.
const HARDY_CHECK: f64 = 1e-6;

/// Eigenvalues below this fraction of the largest one count as zero.
const DEGENERACY: f64 = 1e-9;

/// The Hessian form of `φ_n` at a critical point.
#[derive(Clone, Debug, Serialize)]
pub struct HessianForm {
    /// `∂²φ_n/∂q_k∂q_j`.
    #[serde(skip)]
    pub a: DMatrix<C64>,
    /// `∂²φ_n/∂q̄_k∂q_j`, a Gram matrix.
    #[serde(skip)]
    pub b: DMatrix<C64>,
    /// Real symmetric matrix of `𝒬` in the coordinates
    /// `(Re v_0, …, Re v_{n−1}, Im v_0, …, Im v_{n−1})`.
    #[serde(skip)]
    pub as_real: DMatrix<f64>,
    /// Real matrix of `𝒬` in coordinates `c = Rv` for which the mixed part
    /// is `‖c‖²`, that is `‖ν/q‖² = ‖c‖²`. It has the inertia of
    /// `as_real` and is far better scaled.
    #[serde(skip)]
    pub normalized: DMatrix<f64>,
    /// `ν_0, …, ν_{n−1}`.
    #[serde(skip)]
    pub nu: Vec<ComplexPoly>,
    /// Samples of `w_q^σ` on the unit circle.
    #[serde(skip)]
    pub w_sigma: Vec<C64>,
    /// Largest division remainder, relative.
    pub division_residual: f64,
    /// Largest negative-index coefficient of `w_q`, relative.
    pub hardy_residual: f64,
}

impl HessianForm {
    /// `𝒬(v)` from the matrices.
    pub fn quadratic(&self, v: &[C64]) -> f64 {
        quadratic(&self.a, &self.b, v)
    }

    /// Eigenvalues of the real form in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(&self.as_real)
    }

    /// Eigenvalues of the normalized form in increasing order.
    pub fn normalized_eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(&self.normalized)
    }
}

fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

fn quadratic(a: &DMatrix<C64>, b: &DMatrix<C64>, v: &[C64]) -> f64 {
    let n = v.len();
    let mut s = C64::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            s += v[j] * v[k] * a[(j, k)] + v[j] * v[k].conj() * b[(j, k)];
        }
    }
    2.0 * s.re
}

/// `𝒬(v)/2 = ‖ν/q‖² − 2 Re⟨ν/q, (v w_q)^σ⟩` with `ν = −Σ v_j ν_j`,
/// evaluated on the grid of `state`.
pub fn quadratic_via_nu(state: &State, h: &HessianForm, v: &[C64]) -> f64 {
    let pts = state.points();
    let qv = state.q_values();
    let vals: Vec<C64> = pts
        .iter()
        .zip(qv)
        .map(|(&t, &q)| {
            let nu: C64 = v.iter().zip(&h.nu).map(|(&vj, p)| -vj * p.eval(t)).sum();
            nu / q
        })
        .collect();
    // (v w)^σ = conj(v) w^σ on the circle.
    let vw_sigma: Vec<C64> = pts
        .iter()
        .zip(&h.w_sigma)
        .map(|(&t, &ws)| {
            let vt: C64 = v.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c);
            vt.conj() * ws
        })
        .collect();
    let norm = state.mean(|i| vals[i], |i| vals[i]).re;
    let cross = state.mean(|i| vals[i], |i| vw_sigma[i]);
    2.0 * (norm - 2.0 * cross.re)
}

/// Hessian form at a critical point `q`.
///
/// `q` must be irreducible and its gradient norm below `grad_tol`.
pub fn hessian(f: &Functional, q: &MonicPoly, grad_tol: f64) -> Result<HessianForm> {
    let state = f.state(q)?;
    let g = state.grad_norm();
    if g > grad_tol {
        return Err(Error::Precondition(format!("gradient norm {g:.3e} exceeds {grad_tol:.3e}; q is not critical")));
    }
    let (irreducible, k) = super::irreducibility_check(&state.l, q, crate::config::TAU_GCD);
    if !irreducible {
        return Err(Error::Precondition(format!("L_q and q share {k} root(s); the Hessian needs an irreducible q")));
    }
    hessian_from_state(&state)
}

pub(crate) fn hessian_from_state(state: &State) -> Result<HessianForm> {
    let n = state.degree();
    let pts = state.points();
    let qv = state.q_values();
    let lv = state.l_values();
    let err = state.error_values();
    let m = pts.len();
    let q = &state.q;
    let qt = reciprocal_poly(q.poly(), n)?;
    let l = &state.l;

    // ∂L_q/∂q_m from the differentiated Gram system.
    let gram = crate::hardy::gram_matrix(qv, n);
    let lu = gram.lu();
    let mut nu = Vec::with_capacity(n);
    let mut division_residual: f64 = 0.0;
    for mm in 0..n {
        let rhs = DVector::from_fn(n, |j, _| {
            state.mean(|i| pts[i].powu(mm as u32) * lv[i] / (qv[i] * qv[i]), |i| pts[i].powu(j as u32) / qv[i])
        });
        let dl = lu.solve(&rhs).ok_or_else(|| Error::Consistency("singular Gram matrix".into()))?;
        let dl = ComplexPoly::from_raw(dl.iter().copied().collect());
        let num = q.poly().mul(&dl).sub(&l.shift(mm));
        let (quot, rem) = divide_increasing(&num, &qt, n);
        let scale = num.norm().max(l.norm()).max(1e-300);
        division_residual = division_residual.max(rem / scale);
        nu.push(quot);
    }
    if division_residual > DIVISION_CHECK {
        return Err(Error::Consistency(format!(
            "q ∂L_q/∂q_j − z^j L_q leaves remainder {division_residual:.3e} after division by q̃"
        )));
    }

    // w^σ = e q/(q̃ conj(q)) on the circle.
    let w_sigma: Vec<C64> =
        (0..m).map(|i| err[i] * qv[i] / (qt.eval(pts[i]) * qv[i].conj())).collect();
    let w: Vec<C64> = (0..m).map(|i| pts[i].conj() * w_sigma[i].conj()).collect();
    let wg = CircleGrid::new(w)?;
    let coeffs = wg.fourier();
    let wn = wg.norm();
    let leak = (1..m / 2).map(|k| coeffs[m - k].norm()).fold(0.0, f64::max);
    let hardy_residual = if wn > 0.0 { leak / wn } else { 0.0 };
    if hardy_residual > HARDY_CHECK && leak > 1e-12 * state.target_norm() {
        return Err(Error::Consistency(format!(
            "w_q is not in H²: negative-index coefficient {leak:.3e} against norm {wn:.3e}"
        )));
    }

    let nu_vals: Vec<Vec<C64>> =
        nu.iter().map(|p| (0..m).map(|i| p.eval(pts[i]) / qv[i]).collect()).collect();
    let b = DMatrix::from_fn(n, n, |j, k| state.mean(|i| nu_vals[j][i], |i| nu_vals[k][i]));
    let a = DMatrix::from_fn(n, n, |j, k| {
        2.0 * state.mean(|i| pts[i].powu(j as u32) * nu_vals[k][i], |i| w_sigma[i])
    });
    // Symmetrize A: the bilinear part only sees A + Aᵀ.
    let a = (&a + a.transpose()) * C64::new(0.5, 0.0);

    // Samples of ν_j/q scaled so that B = Rᵀ conj(R) for N = QR.
    let scale = 1.0 / (m as f64).sqrt();
    let samples = DMatrix::from_fn(m, n, |i, j| nu_vals[j][i] * scale);
    let r = samples.qr().r();
    let r_inv = r
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("the polynomials ν_j are linearly dependent".into()))?;
    let a_norm = r_inv.transpose() * &a * &r_inv;
    let b_norm = r_inv.transpose() * &b * r_inv.map(|v| v.conj());

    let as_real = real_matrix(&a, &b, n);
    let normalized = real_matrix(&a_norm, &b_norm, n);
    Ok(HessianForm { a, b, as_real, normalized, nu, w_sigma, division_residual, hardy_residual })
}

/// Real matrix `H` with `𝒬(x) = xᵀHx`, by polarization on the coordinate
/// basis; it is the Hessian of `φ_n` in real coordinates.
fn real_matrix(a: &DMatrix<C64>, b: &DMatrix<C64>, n: usize) -> DMatrix<f64> {
    let basis = |a: usize| {
        let mut v = vec![C64::new(0.0, 0.0); n];
        if a < n {
            v[a] = C64::new(1.0, 0.0);
        } else {
            v[a - n] = C64::new(0.0, 1.0);
        }
        v
    };
    let diag: Vec<f64> = (0..2 * n).map(|i| quadratic(a, b, &basis(i))).collect();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        out[(i, i)] = diag[i];
        for j in i + 1..2 * n {
            let v: Vec<C64> = basis(i).iter().zip(basis(j)).map(|(x, y)| x + y).collect();
            let val = (quadratic(a, b, &v) - diag[i] - diag[j]) / 2.0;
            out[(i, j)] = val;
            out[(j, i)] = val;
        }
    }
    out
}

/// Quotient of `num` by `den` (with `den(0) = 1`) computed in increasing
/// powers up to degree `n − 1`, and the largest remaining coefficient.
fn divide_increasing(num: &ComplexPoly, den: &ComplexPoly, n: usize) -> (ComplexPoly, f64) {
    let d0 = den.coeff(0);
    let mut quot = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut s = num.coeff(i);
        for k in 1..=i {
            s -= den.coeff(k) * quot[i - k];
        }
        quot[i] = s / d0;
    }
    let quot = ComplexPoly::from_raw(quot);
    let rem = num.sub(&den.mul(&quot));
    let r = rem.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    (quot, r)
}

/// Number of negative eigenvalues of the real form, counted on the
/// normalized form, which has the same inertia.
pub fn morse_index(h: &HessianForm) -> Result<usize> {
    morse_index_of(&h.normalized_eigenvalues())
}

/// Number of negative entries, failing when one is near zero.
pub fn morse_index_of(eigs: &[f64]) -> Result<usize> {
    let big = eigs.iter().map(|e| e.abs()).fold(0.0, f64::max);
    let small = eigs.iter().map(|e| e.abs()).fold(f64::INFINITY, f64::min);
    if eigs.is_empty() || small <= DEGENERACY * big {
        return Err(Error::Degenerate(format!(
            "smallest eigenvalue modulus {small:.3e} against largest {big:.3e}; the critical point is degenerate"
        )));
    }
    Ok(eigs.iter().filter(|&&e| e < 0.0).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{Pole, RationalPart, TargetFunction};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn synthetic_index() {
        assert_eq!(morse_index_of(&[1.0, -1.0]).unwrap(), 1);
        assert!(matches!(morse_index_of(&[1.0, 1e-12]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn single_pole_hessian_is_scalar() {
        for cc in [0.0, 0.3] {
            let pole = Pole::simple(c(cc, 0.0), c(1.0, 0.0));
            let target = TargetFunction::rational_only(RationalPart::new(vec![pole]).unwrap(), 0.85, 0.95).unwrap();
            let f = Functional::new(target).unwrap();
            let q = MonicPoly::from_roots(&[c(cc, 0.0)]);
            let h = hessian(&f, &q, 1e-10).unwrap();
            let want = 2.0 / (1.0 - cc * cc).powi(3);
            for i in 0..2 {
                for j in 0..2 {
                    let w = if i == j { want } else { 0.0 };
                    assert!((h.as_real[(i, j)] - w).abs() < 1e-10, "c = {cc}: {}", h.as_real);
                }
            }
            assert_eq!(morse_index(&h).unwrap(), 0);
        }
    }

    #[test]
    fn increasing_division_is_exact_for_multiples() {
        let den = ComplexPoly::new(vec![c(1.0, 0.0), c(-0.3, 0.1), c(0.2, 0.0)]);
        let quot = ComplexPoly::new(vec![c(0.5, 1.0), c(2.0, -1.0)]);
        let (q, r) = divide_increasing(&den.mul(&quot), &den, 2);
        assert!(r < 1e-15);
        assert!((q.coeff(1) - quot.coeff(1)).norm() < 1e-15);
    }
}
