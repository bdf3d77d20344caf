//! Diagonal multipoint Padé approximants `Π_n = p/ℓ`.
//!
//! The linear conditions are written in the coordinate `υ = φ(z)` of the
//! disk, where `∞` sits at `υ = 0` and the support `[a, b]` is the unit
//! circle. Both `ℓ` and `p` are expanded in Chebyshev polynomials of the
//! chart variable `x = (z − (a+b)/2)/((b−a)/2)`.
//!
//! Write `ℓ𝔉 = tail + poly` with `tail = I_y[ℓ(y)/(z − y)]`, where the
//! functional `I` integrates against `μ̇ dω` and differentiates at the poles
//! of `r`. The unknowns are `ℓ` and `p̂ = p − poly`, and every condition is
//! a Taylor coefficient of `G(υ) = P(υ) υ^{n−1} (tail − p̂)` at a node, with
//! `P(υ) = Π (υ − φ(λ))^{m_λ}` clearing the poles of `r`. A node at infinity
//! contributes the coefficients at `υ = 0`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::scheme::InterpolationSet;
use crate::cauchy::{chebyshev_roots, clenshaw, gauss_nodes, t_monomial_table, Pole, Segment, TargetFunction};
use crate::config::{QUAD_NODES, QUAD_NODES_MAX, TAU_GCD, TAU_ZERO};
use crate::error::{Error, Result};
use crate::hardy::{ComplexPoly, Jet, MonicPoly};

/// Ratio of the two smallest singular values under which the null space
/// is reported as more than one-dimensional.
const DEGENERATE_GAP: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct PadeApproximant {
    n: usize,
    segment: Segment,
    /// Chebyshev coefficients of `ℓ` and `p` in the chart variable.
    ell_cheb: Vec<C64>,
    p_cheb: Vec<C64>,
    /// Monomial forms in `z` after removal of common roots.
    ell: ComplexPoly,
    p: ComplexPoly,
    nodes: Vec<(C64, usize)>,
    at_infinity: usize,
    degenerate: bool,
    gcd_degree: usize,
    singular_ratio: f64,
    /// Roots of the unreduced `ℓ`.
    ell_roots: Vec<C64>,
}

impl PadeApproximant {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &ComplexPoly {
        &self.p
    }

    pub fn ell(&self) -> &ComplexPoly {
        &self.ell
    }

    pub fn ell_chebyshev(&self) -> &[C64] {
        &self.ell_cheb
    }

    pub fn p_chebyshev(&self) -> &[C64] {
        &self.p_cheb
    }

    /// Distinct finite nodes of the `2n` conditions with multiplicities.
    pub fn nodes(&self) -> &[(C64, usize)] {
        &self.nodes
    }

    pub fn at_infinity(&self) -> usize {
        self.at_infinity
    }

    /// The null space of the conditions had dimension above one.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    /// Number of common roots removed from `p` and `ℓ`.
    pub fn gcd_degree(&self) -> usize {
        self.gcd_degree
    }

    /// Smallest over second smallest singular value of the system.
    pub fn singular_ratio(&self) -> f64 {
        self.singular_ratio
    }

    /// Roots of the reduced denominator.
    pub fn poles(&self) -> Vec<C64> {
        if self.gcd_degree == 0 {
            let s = self.segment;
            chebyshev_roots(&self.ell_cheb, TAU_ZERO).into_iter().map(|x| s.from_x(x)).collect()
        } else {
            self.ell.roots()
        }
    }

    /// Roots of `ℓ` before common roots with `p` were removed.
    pub fn unreduced_poles(&self) -> &[C64] {
        &self.ell_roots
    }

    /// `ℓ` made monic; fails when the degree dropped below `n`.
    pub fn monic_denominator(&self) -> Result<MonicPoly> {
        MonicPoly::new(self.ell.clone())
    }

    /// `Π_n(z)`.
    pub fn eval(&self, z: C64) -> C64 {
        if z.is_infinite() {
            return C64::new(0.0, 0.0);
        }
        if self.gcd_degree == 0 {
            let x = self.segment.to_x(z);
            clenshaw(&self.p_cheb, x) / clenshaw(&self.ell_cheb, x)
        } else {
            self.p.eval(z) / self.ell.eval(z)
        }
    }

    /// `ℓ(z)` and `p(z)` from the unreduced Chebyshev forms.
    pub fn eval_parts(&self, z: C64) -> (C64, C64) {
        let x = self.segment.to_x(z);
        (clenshaw(&self.ell_cheb, x), clenshaw(&self.p_cheb, x))
    }

    /// `(𝔉 − Π_n)(z)` without cancellation.
    ///
    /// For any polynomial `g` of degree at most `n`,
    /// `𝔉 − Π_n = (Q(z)/(g(z)ℓ(z))) I_y[g(y)ℓ(y)/(Q(y)(z − y))]` with `Q`
    /// the node polynomial. When `ℓ` has at least as many roots as `r` has
    /// poles, `g` is `ℓ` with the roots nearest to the poles moved onto the
    /// poles, so that the pole terms drop out; otherwise `g = ℓ`.
    pub fn error(&self, target: &TargetFunction, z: C64) -> Result<C64> {
        let d = target.singular_distance(z);
        if d <= crate::config::TAU_MARGIN {
            return Err(Error::Domain(format!("error requested at {z}, distance {d:.3e} from the singular set")));
        }
        let lz = clenshaw(&self.ell_cheb, self.segment.to_x(z));
        if lz.norm() == 0.0 {
            return Err(Error::Domain(format!("{z} is a pole of the approximant")));
        }
        let swaps = self.pole_swaps(target);
        let kernel = |y: C64| -> C64 {
            let mut v = (clenshaw(&self.ell_cheb, self.segment.to_x(y)) / lz).powu(2) / (z - y);
            for &(e, m) in &self.nodes {
                v *= ((z - e) / (y - e)).powu(m as u32);
            }
            for &(lam, zeta) in swaps.iter().flatten() {
                v *= (y - lam) * (z - zeta) / ((y - zeta) * (z - lam));
            }
            v
        };
        let mut total = C64::new(0.0, 0.0);
        if let Some(meas) = target.measure() {
            let mut k = QUAD_NODES;
            let mut prev = meas.integrate(k, |t| kernel(C64::new(t, 0.0)));
            loop {
                k *= 2;
                let next = meas.integrate(k, |t| kernel(C64::new(t, 0.0)));
                if (next - prev).norm() <= 1e-12 * next.norm() || k >= QUAD_NODES_MAX {
                    total += next;
                    break;
                }
                prev = next;
            }
        }
        if swaps.is_none() {
            for pole in target.rational().poles() {
                total += self.pole_term(pole, z, lz);
            }
        }
        Ok(total)
    }

    /// Pairs `(λ, ζ)` of a pole of `r` (with multiplicity) and the nearest
    /// unused root of `ℓ`.
    fn pole_swaps(&self, target: &TargetFunction) -> Option<Vec<(C64, C64)>> {
        let poles = target.rational().poles();
        if target.rational().degree() > self.ell_roots.len() {
            return None;
        }
        let mut used = vec![false; self.ell_roots.len()];
        let mut out = Vec::new();
        for p in poles {
            for _ in 0..p.multiplicity() {
                let (i, _) = self
                    .ell_roots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !used[*i])
                    .min_by(|a, b| (a.1 - p.location).norm().total_cmp(&(b.1 - p.location).norm()))?;
                used[i] = true;
                out.push((p.location, self.ell_roots[i]));
            }
        }
        Some(out)
    }

    fn pole_term(&self, pole: &Pole, z: C64, lz: C64) -> C64 {
        let m = pole.multiplicity();
        let y = Jet::variable(pole.location, m - 1);
        let x = chart_jet(&self.segment, &y);
        let ell = jet_clenshaw(&self.ell_cheb, &x).scale(lz.inv());
        let mut g = (&ell * &ell).div(&(&y.scale(C64::new(-1.0, 0.0)) + z));
        for &(e, mult) in &self.nodes {
            let ratio = (&y + (-e)).inv().scale(z - e);
            g = &g * &ratio.powu(mult as u32);
        }
        pole.coeffs.iter().enumerate().map(|(j, &c)| c * g.coeffs()[j]).sum()
    }
}

/// Chart variable `x = (y − c)/s` of a jet in `y`.
fn chart_jet(seg: &Segment, y: &Jet) -> Jet {
    (y + C64::new(-seg.center(), 0.0)).scale(C64::new(1.0 / seg.half_width(), 0.0))
}

/// `T_0(x)..T_n(x)` on a jet.
fn t_jets(n: usize, x: &Jet) -> Vec<Jet> {
    let d = x.order();
    let mut t = vec![Jet::constant(C64::new(1.0, 0.0), d)];
    if n >= 1 {
        t.push(x.clone());
    }
    for k in 2..=n {
        let next = &(x * &t[k - 1]).scale(C64::new(2.0, 0.0)) - &t[k - 2];
        t.push(next);
    }
    t
}

fn jet_clenshaw(c: &[C64], x: &Jet) -> Jet {
    let t = t_jets(c.len().saturating_sub(1), x);
    let mut out = Jet::constant(C64::new(0.0, 0.0), x.order());
    for (ck, tk) in c.iter().zip(&t) {
        out = &out + &tk.scale(*ck);
    }
    out
}

/// Chebyshev coefficients of `U_m`.
fn u_in_t(m: usize) -> Vec<f64> {
    let mut out = vec![0.0; m + 1];
    for j in (0..=m).rev().step_by(2) {
        out[j] = if j == 0 { 1.0 } else { 2.0 };
    }
    out
}

/// Monomial form in `z` of a Chebyshev series in the chart variable.
pub(crate) fn chebyshev_to_z(seg: &Segment, c: &[C64]) -> ComplexPoly {
    if c.is_empty() {
        return ComplexPoly::zero();
    }
    let table = t_monomial_table(c.len() - 1);
    let mut mono = vec![C64::new(0.0, 0.0); c.len()];
    for (ck, row) in c.iter().zip(&table) {
        for (l, &v) in row.iter().enumerate() {
            mono[l] += ck * v;
        }
    }
    let s = seg.half_width();
    let lin = ComplexPoly::new(vec![C64::new(-seg.center() / s, 0.0), C64::new(1.0 / s, 0.0)]);
    let mut acc = ComplexPoly::zero();
    for &a in mono.iter().rev() {
        acc = acc.mul(&lin).add(&ComplexPoly::new(vec![a]));
    }
    acc
}

/// Common roots of `p` and `q` matched within `tol` (relative to the root
/// modulus when it exceeds one), each used once.
pub fn common_roots(p_roots: &[C64], q_roots: &[C64], tol: f64) -> Vec<C64> {
    let mut used = vec![false; p_roots.len()];
    let mut out = Vec::new();
    for &r in q_roots {
        let best = p_roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, &s)| (i, (s - r).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((i, d)) = best {
            if d <= tol * r.norm().max(1.0) {
                used[i] = true;
                out.push(r);
            }
        }
    }
    out
}

/// Builds `Π_n` from `2n` interpolation conditions (`nodes.len() = 2n`).
pub fn build_pade(target: &TargetFunction, nodes: &InterpolationSet) -> Result<PadeApproximant> {
    if nodes.len() % 2 == 1 {
        return Err(Error::Invalid(format!("{} interpolation conditions; an even count 2n is required", nodes.len())));
    }
    nodes.validate(target)?;
    let n = nodes.len() / 2;
    let seg = *target.segment();
    let grouped = nodes.grouped();
    if n == 0 {
        let one = vec![C64::new(1.0, 0.0)];
        return Ok(PadeApproximant {
            n,
            segment: seg,
            ell_cheb: one.clone(),
            p_cheb: vec![C64::new(0.0, 0.0)],
            ell: ComplexPoly::new(one),
            p: ComplexPoly::zero(),
            nodes: grouped,
            at_infinity: 0,
            degenerate: false,
            gcd_degree: 0,
            singular_ratio: 0.0,
            ell_roots: Vec::new(),
        });
    }
    let s = seg.half_width();
    let poles = target.rational().poles();
    let pole_phi: Vec<C64> = poles.iter().map(|p| seg.phi(p.location)).collect::<Result<_>>()?;

    // Node sequence in the disk coordinate, repeated nodes adjacent.
    let mut seq: Vec<C64> = Vec::with_capacity(2 * n);
    for &(e, m) in &grouped {
        let u = seg.phi(e)?;
        seq.extend(std::iter::repeat_n(u, m));
    }
    seq.extend(std::iter::repeat_n(C64::new(0.0, 0.0), nodes.at_infinity()));
    let r_max = seq.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let rho = r_max.sqrt().max(0.5);
    let k_quad = quad_nodes_for(rho);
    let (y_chart, weights) = match target.measure() {
        Some(m) => {
            let x = gauss_nodes(k_quad);
            let dens = m.density_at_nodes(k_quad);
            let y: Vec<f64> = x.iter().rev().copied().collect();
            let w: Vec<C64> = dens.iter().map(|d| d / (k_quad as f64 * s)).collect();
            (y, w)
        }
        None => (Vec::new(), Vec::new()),
    };
    let t_at_nodes: Vec<Vec<C64>> = y_chart.iter().map(|&y| crate::cauchy::t_values(n, C64::new(y, 0.0))).collect();
    // Taylor coefficients of T_i at each pole, in z-units.
    let pole_t: Vec<Vec<Jet>> = poles
        .iter()
        .map(|p| {
            let y = Jet::variable(p.location, p.multiplicity() - 1);
            t_jets(n, &chart_jet(&seg, &y))
        })
        .collect();

    // Every condition is a divided difference G[υ_1..υ_k], k = 1..2n,
    // computed as a contour integral on |υ| = ρ between the nodes and the
    // unit circle, where G is analytic.
    let cols = 2 * n + 1;
    let m_pts = contour_points_for(r_max, rho);
    let mut rows = vec![vec![C64::new(0.0, 0.0); cols]; 2 * n];
    let mut col = vec![C64::new(0.0, 0.0); cols];
    for v in crate::hardy::circle_points(m_pts) {
        let v = v * rho;
        let clear: C64 = pole_phi.iter().zip(poles).map(|(&f, p)| (v - f).powu(p.multiplicity() as u32)).product();
        let v_nm1 = v.powu((n - 1) as u32);
        col.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
        for ((&y, &w), tv) in y_chart.iter().zip(&weights).zip(&t_at_nodes) {
            let kern = w * 2.0 * v_nm1 * v / (v * v - v * (2.0 * y) + 1.0) * clear;
            for i in 0..=n {
                col[i] += kern * tv[i];
            }
        }
        for (pi, pole) in poles.iter().enumerate() {
            let m_l = pole.multiplicity();
            let base = v * (2.0 / s) / (v - pole_phi[pi].inv());
            let others: C64 = pole_phi
                .iter()
                .zip(poles)
                .enumerate()
                .filter(|(pj, _)| *pj != pi)
                .map(|(_, (&f, p))| (v - f).powu(p.multiplicity() as u32))
                .product();
            for j in 1..=m_l {
                let term = v_nm1 * base.powu(j as u32) * (v - pole_phi[pi]).powu((m_l - j) as u32) * others;
                for (mi, &cm) in pole.coeffs.iter().enumerate().skip(j - 1) {
                    let k = mi + 1 - j;
                    for (i, tj) in pole_t[pi].iter().enumerate() {
                        col[i] += term * cm * tj.coeffs()[k];
                    }
                }
            }
        }
        for j in 0..n {
            let mono = if j == 0 { v_nm1 } else { (v.powu((n - 1 - j) as u32) + v.powu((n - 1 + j) as u32)) * 0.5 };
            col[n + 1 + j] = -mono * clear;
        }
        let mut omega = v / m_pts as f64;
        for (k, row) in rows.iter_mut().enumerate() {
            omega /= v - seq[k];
            for (r, &cv) in row.iter_mut().zip(&col) {
                *r += cv * omega;
            }
        }
    }
    for row in rows.iter_mut() {
        let norm = row.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|v| *v /= norm);
        }
    }

    let mut a = DMatrix::<C64>::zeros(cols, cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            a[(r, c)] = v;
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::Degenerate("singular value decomposition failed".into()))?;
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let smallest = svd.singular_values[order[0]];
    let second = svd.singular_values[order[1]];
    let largest = svd.singular_values[order[cols - 1]];
    let degenerate = second <= DEGENERATE_GAP * largest;
    let sol: Vec<C64> = vt.row(order[0]).iter().map(|v| v.conj()).collect();

    let mut ell_cheb = sol[..=n].to_vec();
    let p_hat = &sol[n + 1..];

    // Moments M_k = I[T_k] in the chart variable, times 1/s.
    let mut moments = vec![C64::new(0.0, 0.0); n];
    for (&w, tv) in weights.iter().zip(&t_at_nodes) {
        for k in 0..n {
            moments[k] += w * tv[k];
        }
    }
    for (pi, pole) in poles.iter().enumerate() {
        for (mi, &cm) in pole.coeffs.iter().enumerate() {
            for k in 0..n {
                moments[k] += cm * pole_t[pi][k].coeffs()[mi] / s;
            }
        }
    }
    let mut p_cheb = p_hat.to_vec();
    for (i, &li) in ell_cheb.iter().enumerate().skip(1) {
        for (k, &mk) in moments.iter().enumerate().take(i) {
            let weight = if k == 0 { 1.0 } else { 2.0 };
            let u = u_in_t(i - 1 - k);
            for (j, &uj) in u.iter().enumerate() {
                p_cheb[j] += li * mk * weight * uj;
            }
        }
    }

    let mut ell = chebyshev_to_z(&seg, &ell_cheb);
    let mut p = chebyshev_to_z(&seg, &p_cheb);
    let big = ell.coeffs().iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(C64::new(1.0, 0.0));
    let lead = ell.coeff(n);
    let scale = if lead.norm() > TAU_ZERO * big.norm() { lead } else { big };
    let inv = scale.inv();
    ell = ell.scale(inv);
    p = p.scale(inv);
    ell_cheb.iter_mut().for_each(|v| *v *= inv);
    p_cheb.iter_mut().for_each(|v| *v *= inv);

    let ell_roots: Vec<C64> = chebyshev_roots(&ell_cheb, TAU_ZERO).into_iter().map(|x| seg.from_x(x)).collect();
    let p_roots: Vec<C64> = chebyshev_roots(&p_cheb, TAU_ZERO).into_iter().map(|x| seg.from_x(x)).collect();
    let common = common_roots(&p_roots, &ell_roots, TAU_GCD);
    if !common.is_empty() {
        let g = ComplexPoly::from_roots(&common);
        ell = ell.div_rem(&g)?.0;
        p = p.div_rem(&g)?.0;
    }
    Ok(PadeApproximant {
        n,
        segment: seg,
        ell_cheb,
        p_cheb,
        ell,
        p,
        nodes: grouped,
        at_infinity: nodes.at_infinity(),
        degenerate,
        gcd_degree: common.len(),
        singular_ratio: if second > 0.0 { smallest / second } else { 0.0 },
        ell_roots,
    })
}

/// `Π_n` interpolating at every node of `e` twice.
pub fn build_pade_doubled(target: &TargetFunction, e: &InterpolationSet) -> Result<PadeApproximant> {
    build_pade(target, &e.doubled())
}

/// Gauss nodes resolving `1/(1 − 2yυ + υ²)` for `|υ| ≤ r` to double
/// precision.
fn quad_nodes_for(r: f64) -> usize {
    let need = (20.0 / (-r.ln())).ceil() as usize;
    need.next_power_of_two().clamp(QUAD_NODES, QUAD_NODES_MAX)
}

/// Trapezoid points on `|υ| = ρ` for integrands analytic in
/// `r_max < |υ| < 1`.
fn contour_points_for(r_max: f64, rho: f64) -> usize {
    let rate = (r_max / rho).max(rho);
    let need = (40.0 / (-rate.ln())).ceil() as usize;
    need.next_power_of_two().clamp(64, 1 << 16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{MeasureM, RationalPart};
    use crate::hardy::circle_points;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn arcsine(a: f64, b: f64) -> TargetFunction {
        TargetFunction::markov(MeasureM::constant(a, b, c(1.0, 0.0)).unwrap())
    }

    /// Taylor coefficients of `g` at `z0` from samples on a small circle.
    fn taylor(g: impl Fn(C64) -> C64, z0: C64, rad: f64, order: usize) -> Vec<C64> {
        let m = 32;
        let pts = circle_points(m);
        (0..=order)
            .map(|k| pts.iter().map(|t| g(z0 + t * rad) * t.powi(-(k as i32))).sum::<C64>() / (m as f64 * rad.powi(k as i32)))
            .collect()
    }

    #[test]
    fn first_approximant_of_arcsine_transform() {
        let f = arcsine(-0.5, 0.5);
        let pa = build_pade(&f, &InterpolationSet::at_infinity_only(2)).unwrap();
        assert_eq!(pa.ell().degree(), 1);
        assert!((pa.ell().coeff(0)).norm() < 1e-14);
        assert!((pa.p().coeff(0) - 1.0).norm() < 1e-14);
        // Laurent coefficients of f − Π_1 through order z^{-2} vanish.
        let r = 2.0;
        let pts = circle_points(256);
        for k in 1..=3 {
            let coef: C64 = pts
                .iter()
                .map(|t| (f.eval(t * r).unwrap() - pa.eval(t * r)) * (t * r).powi(k))
                .sum::<C64>()
                / 256.0;
            let want = if k == 3 { 0.125 } else { 0.0 };
            assert!((coef - want).norm() < 1e-12, "k = {k}: {coef}");
        }
    }

    #[test]
    fn rational_targets_are_reproduced() {
        let r = RationalPart::new(vec![
            Pole::simple(c(0.3, 0.2), c(1.0, -0.5)),
            Pole { location: c(-0.4, -0.3), coeffs: vec![c(0.2, 0.0), c(0.7, 0.1)] },
        ])
        .unwrap();
        let f = TargetFunction::rational_only(r, -0.5, 0.5).unwrap();
        for n in 3..=5 {
            let schemes = [
                InterpolationSet::at_infinity_only(2 * n),
                InterpolationSet::reflected(&(0..n).map(|j| c(0.1 * j as f64 - 0.2, 0.05)).collect::<Vec<_>>()).doubled(),
                InterpolationSet::new((0..2 * n - 1).map(|j| c(1.5, 0.3 * j as f64)).collect(), 1).unwrap(),
            ];
            for e in &schemes {
                let pa = build_pade(&f, e).unwrap();
                let err = circle_points(64)
                    .iter()
                    .map(|t| (pa.eval(t * 2.0) - f.eval(t * 2.0).unwrap()).norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-10, "n = {n}: {err} {} {} {:?}", pa.degenerate(), pa.gcd_degree(), pa.poles());
                assert_eq!(pa.ell().degree(), 3);
            }
        }
    }

    #[test]
    fn interpolation_conditions_hold() {
        let m = MeasureM::from_expr(-0.4, 0.6, "exp(0.3*i*t)*(1.5+t)").unwrap();
        let r = RationalPart::new(vec![Pole::simple(c(0.2, 0.7), c(0.3, 0.1))]).unwrap();
        let f = TargetFunction::new(m, r).unwrap();
        let nodes = vec![c(1.8, 0.1), c(-2.5, 0.0), c(0.3, 1.6)];
        let e = InterpolationSet::new(nodes.clone(), 1).unwrap();
        let pa = build_pade_doubled(&f, &e).unwrap();
        assert_eq!(pa.n(), 4);
        let resid = |z: C64| {
            let (l, p) = pa.eval_parts(z);
            l * f.eval(z).unwrap() - p
        };
        for &e in &nodes {
            let (l, _) = pa.eval_parts(e);
            let scale = (l * f.eval(e).unwrap()).norm();
            let t = taylor(resid, e, 1e-2, 1);
            assert!(t[0].norm() < 1e-9 * scale && t[1].norm() < 1e-9 * scale, "{e}: {t:?}");
        }
        // (ℓ𝔉 − p)/Q = O(z^{−(n+1)}): ℓ𝔉 − p = O(z^{n−1−k∞}) = O(z^{1}).
        let big = 40.0;
        let pts = circle_points(512);
        let scale = pts
            .iter()
            .map(|t| (pa.eval_parts(t * big).0 * f.eval(t * big).unwrap()).norm())
            .fold(0.0, f64::max);
        for k in 2..6 {
            let coef: C64 = pts.iter().map(|t| resid(t * big) * t.powi(-k)).sum::<C64>() / 512.0;
            assert!(coef.norm() < 1e-9 * scale, "z^{k}: {coef}");
        }
    }

    #[test]
    fn stable_error_matches_subtraction() {
        let m = MeasureM::from_expr(-0.5, 0.4, "1 + 0.3*t + 0.2*i*t^2").unwrap();
        let r = RationalPart::new(vec![Pole { location: c(0.1, -0.8), coeffs: vec![c(0.2, 0.0), c(0.05, 0.02)] }]).unwrap();
        let f = TargetFunction::new(m, r).unwrap();
        let e = InterpolationSet::new(vec![c(2.0, 0.5), c(-1.5, -1.0)], 1).unwrap();
        let pa = build_pade_doubled(&f, &e).unwrap();
        for z in [c(1.2, 0.3), c(-0.3, 0.9), c(0.0, -1.3)] {
            let direct = f.eval(z).unwrap() - pa.eval(z);
            let stable = pa.error(&f, z).unwrap();
            assert!((direct - stable).norm() < 1e-9 * direct.norm(), "{z}: {direct} vs {stable}");
        }
    }

    #[test]
    fn node_order_does_not_matter() {
        let f = arcsine(-0.3, 0.5);
        let a = InterpolationSet::new(vec![c(2.0, 0.0), c(3.0, 0.0), c(-2.0, 0.0)], 1).unwrap();
        let b = InterpolationSet::new(vec![c(-2.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 1).unwrap();
        let pa = build_pade_doubled(&f, &a).unwrap();
        let pb = build_pade_doubled(&f, &b).unwrap();
        for z in circle_points(16) {
            assert!((pa.eval(z * 1.5) - pb.eval(z * 1.5)).norm() < 1e-13);
        }
    }

    #[test]
    fn odd_counts_and_bad_nodes_are_rejected() {
        let f = arcsine(-0.5, 0.5);
        assert!(build_pade(&f, &InterpolationSet::at_infinity_only(3)).is_err());
        let on_cut = InterpolationSet::new(vec![c(0.1, 0.0)], 1).unwrap();
        assert!(matches!(build_pade(&f, &on_cut), Err(Error::Domain(_))));
    }
}
