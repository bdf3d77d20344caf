//! The products `R_n(z) = Π_e (φ(z) − φ(e))/(1 − φ(z)φ(e))`.

use num_complex::Complex64 as C64;

use super::scheme::InterpolationSet;
use crate::cauchy::{Segment, Side};
use crate::config::TAU_ZERO;
use crate::error::{Error, Result};

/// `R_n(E; z)` for `z` off the segment. A node at infinity contributes
/// the factor `φ(z)`.
pub fn blaschke_product_rn(seg: &Segment, e: &InterpolationSet, z: C64) -> Result<C64> {
    product_at(seg, e, seg.phi(z)?)
}

/// One-sided boundary value of `R_n` at `t ∈ [a, b]`.
pub fn blaschke_product_rn_boundary(seg: &Segment, e: &InterpolationSet, t: f64, side: Side) -> Result<C64> {
    product_at(seg, e, seg.phi_boundary(t, side))
}

/// The same product over an arbitrary list of points, e.g. the poles of a
/// rational part.
pub fn blaschke_product_points(seg: &Segment, points: &[C64], z: C64) -> Result<C64> {
    let set = InterpolationSet::new(points.to_vec(), 0)?;
    blaschke_product_rn(seg, &set, z)
}

fn product_at(seg: &Segment, e: &InterpolationSet, v: C64) -> Result<C64> {
    let mut out = v.powu(e.at_infinity() as u32);
    for &p in e.points() {
        let ve = seg.phi(p)?;
        let den = C64::new(1.0, 0.0) - v * ve;
        if den.norm() < TAU_ZERO {
            return Err(Error::Domain(format!("pole collision: 1 − φ(z)φ(e) vanishes for e = {p}")));
        }
        out *= (v - ve) / den;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basic_products() {
        let seg = Segment::new(-0.5, 0.5).unwrap();
        let z = c(0.7, 0.4);
        assert_eq!(blaschke_product_rn(&seg, &InterpolationSet::empty(), z).unwrap(), c(1.0, 0.0));
        let one = InterpolationSet::at_infinity_only(1);
        assert!((blaschke_product_rn(&seg, &one, z).unwrap() - seg.phi(z).unwrap()).norm() < 1e-16);
        let e = InterpolationSet::new(vec![c(2.0, 0.0)], 0).unwrap();
        assert!(blaschke_product_rn(&seg, &e, c(2.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn modulus_below_one_for_symmetric_sets() {
        let seg = Segment::new(-0.4, 0.3).unwrap();
        let e = InterpolationSet::new(vec![c(1.5, 0.5), c(1.5, -0.5), c(-3.0, 0.0)], 1).unwrap();
        for k in 0..50 {
            let z = C64::from_polar(0.6 + 0.006 * k as f64, 0.37 * k as f64 + 0.1);
            if seg.distance(z) > 1e-3 {
                assert!(blaschke_product_rn(&seg, &e, z).unwrap().norm() < 1.0);
            }
        }
        let up = blaschke_product_rn_boundary(&seg, &e, 0.1, Side::Upper).unwrap();
        let near = blaschke_product_rn(&seg, &e, c(0.1, 1e-7)).unwrap();
        assert!((up - near).norm() < 1e-5);
    }
}
