//! The square root `w` and the conformal map `φ` of the complement of a
//! segment `[a, b]` onto the unit disk.

use num_complex::Complex64 as C64;

use crate::config::TAU_MARGIN;
use crate::error::{Error, Result};

/// Side of the cut for one-sided boundary values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Limit from `Im z > 0`.
    Upper,
    /// Limit from `Im z < 0`.
    Lower,
}

/// Affine chart `x = (z − (a+b)/2) / ((b−a)/2)` sending `[a, b]` to `[−1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
}

impl Segment {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Invalid(format!("a < b required, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b })
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    pub fn to_x(&self, z: C64) -> C64 {
        (z - self.center()) / self.half_width()
    }

    pub fn from_x(&self, x: C64) -> C64 {
        x * self.half_width() + self.center()
    }

    /// Distance from `z` to the segment.
    pub fn distance(&self, z: C64) -> f64 {
        let t = z.re.clamp(self.a, self.b);
        (z - t).norm()
    }

    fn on_cut(&self, z: C64) -> bool {
        z.im.abs() <= TAU_MARGIN * self.half_width() && z.re >= self.a && z.re <= self.b
    }

    /// `w(z)/s` in the chart: `√(x−1)·√(x+1)`, principal roots.
    fn root_x(x: C64) -> C64 {
        (x - 1.0).sqrt() * (x + 1.0).sqrt()
    }

    /// `w(z) = √((z−a)(z−b))`, positive on `(b, ∞)` and cut along `[a, b]`.
    pub fn w(&self, z: C64) -> Result<C64> {
        if self.on_cut(z) {
            return Err(Error::Domain(format!(
                "w requested on the cut at {z}; use the one-sided variant"
            )));
        }
        Ok(Self::root_x(self.to_x(z)) * self.half_width())
    }

    /// Boundary value of `w` at `x ∈ [a, b]` from the given side.
    pub fn w_boundary(&self, t: f64, side: Side) -> C64 {
        let v = ((t - self.a) * (self.b - t)).max(0.0).sqrt();
        match side {
            Side::Upper => C64::new(0.0, v),
            Side::Lower => C64::new(0.0, -v),
        }
    }

    /// `φ(z) = (z − (a+b)/2 − w(z)) / ((b−a)/2)`, evaluated in the stable
    /// form `1/(x + w/s)`.
    pub fn phi(&self, z: C64) -> Result<C64> {
        if z.is_infinite() {
            return Ok(C64::new(0.0, 0.0));
        }
        if self.on_cut(z) {
            return Err(Error::Domain(format!(
                "φ requested on the cut at {z}; use the one-sided variant"
            )));
        }
        let x = self.to_x(z);
        Ok((x + Self::root_x(x)).inv())
    }

    /// Boundary value of `φ` at `t ∈ [a, b]`: `x ∓ i√(1−x²)`.
    pub fn phi_boundary(&self, t: f64, side: Side) -> C64 {
        let x = ((t - self.center()) / self.half_width()).clamp(-1.0, 1.0);
        let y = (1.0 - x * x).sqrt();
        match side {
            Side::Upper => C64::new(x, -y),
            Side::Lower => C64::new(x, y),
        }
    }

    /// Inverse relation `z = (a+b)/2 + ((b−a)/4)(φ + 1/φ)`.
    pub fn phi_inverse(&self, v: C64) -> C64 {
        self.from_x((v + v.inv()) * 0.5)
    }
}

/// `w(z)` for the segment `[a, b]`.
pub fn w_branch(z: C64, a: f64, b: f64) -> Result<C64> {
    Segment::new(a, b)?.w(z)
}

/// `φ(z)` for the segment `[a, b]`.
pub fn joukowski_inverse_phi(z: C64, a: f64, b: f64) -> Result<C64> {
    Segment::new(a, b)?.phi(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn w_positive_right_of_segment() {
        let w = w_branch(c(1.0, 0.0), -0.5, 0.5).unwrap();
        assert!((w - c(3f64.sqrt() / 2.0, 0.0)).norm() < 1e-15);
        let big = c(1e6, 3e5);
        let ratio = w_branch(big, -0.5, 0.5).unwrap() / big;
        assert!((ratio - 1.0).norm() < 1e-6);
    }

    #[test]
    fn upper_boundary_value_is_limit() {
        let s = Segment::new(-0.5, 0.5).unwrap();
        assert_eq!(s.w_boundary(0.0, Side::Upper), c(0.0, 0.5));
        let near = s.w(c(0.0, 1e-7)).unwrap();
        assert!((near - c(0.0, 0.5)).norm() < 1e-6);
        let near = s.w(c(0.0, -1e-7)).unwrap();
        assert!((near - c(0.0, -0.5)).norm() < 1e-6);
        assert!(s.w(c(0.1, 0.0)).is_err());
    }

    #[test]
    fn phi_values() {
        let s = Segment::new(-0.5, 0.5).unwrap();
        let v = s.phi(c(1.0, 0.0)).unwrap();
        assert!((v - c(2.0 - 3f64.sqrt(), 0.0)).norm() < 1e-15);
        assert_eq!(s.phi(c(f64::INFINITY, 0.0)).unwrap(), c(0.0, 0.0));
        for t in [-0.4, 0.0, 0.3] {
            assert!((s.phi_boundary(t, Side::Upper).norm() - 1.0).abs() < 1e-15);
            let lim = s.phi(c(t, 1e-7)).unwrap();
            assert!((lim - s.phi_boundary(t, Side::Upper)).norm() < 1e-6);
        }
    }

    #[test]
    fn rejects_reversed_interval() {
        let e = Segment::new(0.5, 0.3).unwrap_err();
        assert!(e.to_string().contains("a < b required"));
    }
}
