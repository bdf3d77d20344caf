//! Truncated Taylor expansions `Σ_{k≤d} c_k h^k` about a fixed point.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

/// Taylor coefficients of order `0..=d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    c: Vec<C64>,
}

impl Jet {
    pub fn constant(v: C64, d: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); d + 1];
        c[0] = v;
        Self { c }
    }

    /// The variable itself, `center + h`.
    pub fn variable(center: C64, d: usize) -> Self {
        let mut j = Self::constant(center, d);
        if d >= 1 {
            j.c[1] = C64::new(1.0, 0.0);
        }
        j
    }

    pub fn from_coeffs(c: Vec<C64>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least the value");
        Self { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.c
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { c: self.c.iter().map(|v| v * s).collect() }
    }

    /// Reciprocal; the value must be nonzero.
    pub fn inv(&self) -> Self {
        let d = self.order();
        let a0 = self.c[0].inv();
        let mut out = vec![C64::new(0.0, 0.0); d + 1];
        out[0] = a0;
        for k in 1..=d {
            let s: C64 = (1..=k).map(|j| self.c[j] * out[k - j]).sum();
            out[k] = -s * a0;
        }
        Self { c: out }
    }

    pub fn powu(&self, e: u32) -> Self {
        let mut out = Self::constant(C64::new(1.0, 0.0), self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.inv()
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let d = self.order().min(o.order());
        let c = (0..=d).map(|k| (0..=k).map(|j| self.c[j] * o.c[k - j]).sum()).collect();
        Jet { c }
    }
}

impl Add<C64> for &Jet {
    type Output = Jet;
    fn add(self, v: C64) -> Jet {
        let mut out = self.clone();
        out.c[0] += v;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_of_geometric() {
        let z0 = C64::new(0.3, 0.1);
        let x = Jet::variable(z0, 6);
        let f = (&Jet::constant(C64::new(1.0, 0.0), 6) - &x).inv();
        for (k, c) in f.coeffs().iter().enumerate() {
            let want = (C64::new(1.0, 0.0) - z0).powi(-(k as i32) - 1);
            assert!((c - want).norm() < 1e-13);
        }
        let sq = x.powu(2);
        assert!((sq.coeffs()[1] - z0 * 2.0).norm() < 1e-15);
        assert!((sq.coeffs()[2] - 1.0).norm() < 1e-15);
        assert!(sq.coeffs()[3].norm() == 0.0);
    }
}
