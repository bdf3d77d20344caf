//! Dense complex polynomials in the monomial basis.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::config::TAU_ZERO;
use crate::error::{Error, Result};

/// Polynomial with complex coefficients, lowest degree first.
///
/// Trailing coefficients below `TAU_ZERO` times the coefficient norm are
/// dropped on construction, so `coeffs.len() == degree + 1` and the zero
/// polynomial has no coefficients and degree −1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        while let Some(last) = coeffs.last() {
            if last.norm() <= TAU_ZERO * norm || last.norm() == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    /// Builds a polynomial without trimming, keeping exact zeros in place.
    pub fn from_raw(coeffs: Vec<C64>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            p.coeffs.pop();
        }
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![C64::new(1.0, 0.0)] }
    }

    /// The monomial `c z^k`.
    pub fn monomial(k: usize, c: C64) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::from_raw(coeffs)
    }

    /// Monic polynomial `Π (z − r)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<C64> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), C64::new(0.0, 0.0));
        v
    }

    /// Degree, −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z`.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_raw(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_raw((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_raw((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_raw(out)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); k];
        out.extend_from_slice(&self.coeffs);
        Self::from_raw(out)
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::Degree("division by the zero polynomial".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), Self::from_raw(rem)));
        }
        let mut quot = vec![C64::new(0.0, 0.0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] / lead;
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(quot), Self::from_raw(rem)))
    }

    /// Roots from the eigenvalues of the companion matrix, polished by Newton.
    pub fn roots(&self) -> Vec<C64> {
        let d = self.degree();
        if d < 1 {
            return Vec::new();
        }
        let d = d as usize;
        let lead = self.coeffs[d];
        let mut roots = if d == 1 {
            vec![-self.coeffs[0] / lead]
        } else {
            let mut m = DMatrix::<C64>::zeros(d, d);
            for i in 1..d {
                m[(i, i - 1)] = C64::new(1.0, 0.0);
            }
            for i in 0..d {
                m[(i, d - 1)] = -self.coeffs[i] / lead;
            }
            eigenvalues(m)
        };
        for r in roots.iter_mut() {
            for _ in 0..3 {
                let (p, dp) = self.eval_with_derivative(*r);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                let cand = *r - step;
                if self.eval(cand).norm() < p.norm() {
                    *r = cand;
                } else {
                    break;
                }
            }
        }
        roots
    }
}

pub(crate) fn eigenvalues(m: DMatrix<C64>) -> Vec<C64> {
    let d = m.nrows();
    let schur = nalgebra::linalg::Schur::new(m);
    let (_, t) = schur.unpack();
    (0..d).map(|i| t[(i, i)]).collect()
}

/// Monic polynomial of exact degree `n`, typically a denominator with all
/// zeros in the open unit disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonicPoly {
    poly: ComplexPoly,
    zeros_in_disk: bool,
}

impl MonicPoly {
    /// Normalizes `p` by its leading coefficient.
    pub fn new(p: ComplexPoly) -> Result<Self> {
        if p.degree() < 0 {
            return Err(Error::Degree("zero polynomial cannot be made monic".into()));
        }
        let lead = *p.coeffs().last().unwrap();
        let mut coeffs: Vec<C64> = p.coeffs().iter().map(|&c| c / lead).collect();
        *coeffs.last_mut().unwrap() = C64::new(1.0, 0.0);
        let poly = ComplexPoly::from_raw(coeffs);
        let zeros_in_disk = poly.roots().iter().all(|r| r.norm() < 1.0);
        Ok(Self { poly, zeros_in_disk })
    }

    /// Monic polynomial from its lower coefficients `q_0..q_{n-1}`.
    pub fn from_lower(lower: &[C64]) -> Self {
        let mut coeffs = lower.to_vec();
        coeffs.push(C64::new(1.0, 0.0));
        let poly = ComplexPoly::from_raw(coeffs);
        let zeros_in_disk = poly.roots().iter().all(|r| r.norm() < 1.0);
        Self { poly, zeros_in_disk }
    }

    pub fn from_roots(roots: &[C64]) -> Self {
        let poly = ComplexPoly::from_roots(roots);
        let zeros_in_disk = roots.iter().all(|r| r.norm() < 1.0);
        Self { poly, zeros_in_disk }
    }

    pub fn poly(&self) -> &ComplexPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree() as usize
    }

    /// The free coefficients `q_0..q_{n-1}`.
    pub fn lower(&self) -> &[C64] {
        &self.poly.coeffs()[..self.degree()]
    }

    pub fn zeros_in_disk(&self) -> bool {
        self.zeros_in_disk
    }

    pub fn roots(&self) -> Vec<C64> {
        self.poly.roots()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.poly.eval(z)
    }
}

/// Reciprocal polynomial `z^k conj(p(1/conj z))`: coefficients reversed,
/// padded to length `k + 1` and conjugated.
///
/// ```
/// use num_complex::Complex64 as C64;
/// use ratl2::hardy::{reciprocal_poly, ComplexPoly};
/// let xi = C64::new(0.3, 0.2);
/// let p = ComplexPoly::new(vec![-xi, C64::new(1.0, 0.0)]);
/// let r = reciprocal_poly(&p, 1).unwrap();
/// assert_eq!(r.coeffs(), &[C64::new(1.0, 0.0), -xi.conj()]);
/// ```
pub fn reciprocal_poly(p: &ComplexPoly, k: usize) -> Result<ComplexPoly> {
    if p.degree() > k as isize {
        return Err(Error::Degree(format!(
            "reciprocal of degree {} requested with k = {k}",
            p.degree()
        )));
    }
    let padded = p.padded(k + 1);
    Ok(ComplexPoly::from_raw(padded.iter().rev().map(|c| c.conj()).collect()))
}
