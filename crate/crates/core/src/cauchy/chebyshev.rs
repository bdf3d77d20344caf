//! Chebyshev nodes, coefficients and evaluation on `[-1, 1]`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use nalgebra::DMatrix;

use crate::hardy::{dft, eigenvalues};

/// Gauss-Chebyshev nodes `cos((2j−1)π/2K)`, `j = 1..K`, in decreasing order.
pub fn gauss_nodes(k: usize) -> Vec<f64> {
    (1..=k).map(|j| ((2 * j - 1) as f64 * PI / (2 * k) as f64).cos()).collect()
}

/// Coefficients `c_k` of `Σ c_k T_k` interpolating values given at
/// [`gauss_nodes`]; `c_0` is the plain mean.
pub fn coeffs_from_gauss(values: &[C64]) -> Vec<C64> {
    let k = values.len();
    let mut data = vec![C64::new(0.0, 0.0); 4 * k];
    for (j, &v) in values.iter().enumerate() {
        data[2 * j + 1] = v;
    }
    dft(&mut data, false);
    let mut out = Vec::with_capacity(k);
    out.push(data[0] / k as f64);
    for m in 1..k {
        out.push((data[m] + data[4 * k - m]) / k as f64);
    }
    out
}

/// Clenshaw evaluation of `Σ c_k T_k(x)`.
pub fn clenshaw(c: &[C64], x: C64) -> C64 {
    let mut b1 = C64::new(0.0, 0.0);
    let mut b2 = C64::new(0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + x * b1 * 2.0 - b2;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or_default() + x * b1 - b2
}

/// `T_0(x)..T_n(x)`.
pub fn t_values(n: usize, x: C64) -> Vec<C64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(C64::new(1.0, 0.0));
    if n >= 1 {
        t.push(x);
    }
    for k in 2..=n {
        let next = x * t[k - 1] * 2.0 - t[k - 2];
        t.push(next);
    }
    t
}

/// Monomial coefficients of `T_0..T_n`: `out[j][l]` is the coefficient of
/// `x^l` in `T_j`.
pub fn t_monomial_table(n: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![vec![1.0]];
    if n >= 1 {
        out.push(vec![0.0, 1.0]);
    }
    for j in 2..=n {
        let mut next = vec![0.0; j + 1];
        for (l, &v) in out[j - 1].iter().enumerate() {
            next[l + 1] += 2.0 * v;
        }
        for (l, &v) in out[j - 2].iter().enumerate() {
            next[l] -= v;
        }
        out.push(next);
    }
    out
}

/// Index past the last coefficient above `tol` times the largest one.
pub fn effective_length(c: &[C64], tol: f64) -> usize {
    let scale = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    c.iter().rposition(|v| v.norm() > tol * scale).map_or(1, |i| i + 1)
}

/// Roots of `Σ c_k T_k` from the colleague matrix, polished by Newton
/// steps on the series itself. Trailing coefficients below `tol` times the
/// largest one are dropped first.
pub fn chebyshev_roots(c: &[C64], tol: f64) -> Vec<C64> {
    let scale = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let Some(n) = c.iter().rposition(|v| v.norm() > tol * scale) else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let mut m = DMatrix::<C64>::zeros(n, n);
    let half = C64::new(0.5, 0.0);
    if n > 1 {
        m[(0, 1)] = C64::new(1.0, 0.0);
    }
    for k in 1..n {
        m[(k, k - 1)] = half;
        if k + 1 < n {
            m[(k, k + 1)] = half;
        }
    }
    for j in 0..n {
        m[(n - 1, j)] -= c[j] / (c[n] * 2.0);
    }
    if n == 1 {
        m[(0, 0)] = -c[0] / c[1];
    }
    let mut roots = eigenvalues(m);
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = clenshaw_with_derivative(&c[..=n], *r);
            if dv.norm() == 0.0 {
                break;
            }
            let cand = *r - v / dv;
            if clenshaw(&c[..=n], cand).norm() < v.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    roots
}

/// `Σ c_k T_k(x)` and its derivative, through `T_k' = k U_{k−1}`.
pub fn clenshaw_with_derivative(c: &[C64], x: C64) -> (C64, C64) {
    let mut u_prev = C64::new(0.0, 0.0);
    let mut u = C64::new(1.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for (k, &ck) in c.iter().enumerate().skip(1) {
        d += ck * u * k as f64;
        let next = x * u * 2.0 - u_prev;
        u_prev = u;
        u = next;
    }
    (clenshaw(c, x), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colleague_roots() {
        let mut c = vec![C64::new(0.0, 0.0); 8];
        c[7] = C64::new(1.0, 0.0);
        let mut r: Vec<f64> = chebyshev_roots(&c, 1e-14).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        let mut want: Vec<f64> = gauss_nodes(7);
        want.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip(&want) {
            assert!((a - b).abs() < 1e-13);
        }
        let lin = [C64::new(0.25, 0.0), C64::new(0.5, 0.0)];
        assert!((chebyshev_roots(&lin, 1e-14)[0] + 0.5).norm() < 1e-15);
    }

    #[test]
    fn interpolates_a_polynomial() {
        // 3 T_0 − T_2 + 0.5i T_3
        let c = [C64::new(3.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 0.5)];
        let nodes = gauss_nodes(16);
        let vals: Vec<C64> = nodes.iter().map(|&x| clenshaw(&c, C64::new(x, 0.0))).collect();
        let got = coeffs_from_gauss(&vals);
        for (k, g) in got.iter().enumerate() {
            let want = c.get(k).copied().unwrap_or_default();
            assert!((g - want).norm() < 1e-14, "c_{k} = {g}");
        }
    }

    #[test]
    fn recurrence_matches_cosines() {
        let th: f64 = 0.7;
        let t = t_values(9, C64::new(th.cos(), 0.0));
        for (k, v) in t.iter().enumerate() {
            assert!((v.re - (k as f64 * th).cos()).abs() < 1e-14);
        }
        let table = t_monomial_table(4);
        assert_eq!(table[4], vec![1.0, 0.0, -8.0, 0.0, 8.0]);
    }
}
