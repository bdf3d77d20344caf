//! Winding numbers of non-vanishing functions on the unit circle.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::series::CircleGrid;
use crate::config::TAU_ZERO;
use crate::error::{Error, Result};

/// Accumulated argument of the samples divided by 2π.
///
/// Fails when a sample is below `TAU_ZERO` relative to the largest one, or
/// when two neighbours differ in phase by π/2 or more.
pub fn winding_number(samples: &CircleGrid) -> Result<i64> {
    winding_of(samples.samples())
}

pub(crate) fn winding_of(v: &[C64]) -> Result<i64> {
    let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let floor = v.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min);
    if !(floor > TAU_ZERO * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::Vanishing(format!(
            "sample modulus {floor:.3e} against a maximum of {scale:.3e}"
        )));
    }
    let mut total = 0.0;
    for j in 0..v.len() {
        let step = (v[(j + 1) % v.len()] / v[j]).arg();
        if step.abs() >= PI / 2.0 {
            return Err(Error::Resolution(format!(
                "phase jump {step:.3} between samples {j} and {}",
                (j + 1) % v.len()
            )));
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Winding number of `f` on the circle, doubling the grid from `m0` until
/// two consecutive sizes agree.
pub fn winding_adaptive(f: impl Fn(C64) -> C64, m0: usize, m_max: usize) -> Result<(i64, usize)> {
    let mut m = m0.next_power_of_two().max(8);
    let mut prev: Option<i64> = None;
    let mut last_err = None;
    while m <= m_max {
        match winding_number(&CircleGrid::from_fn(m, &f)) {
            Ok(w) => {
                if prev == Some(w) {
                    return Ok((w, m / 2));
                }
                prev = Some(w);
            }
            Err(e @ Error::Vanishing(_)) => return Err(e),
            Err(e) => {
                prev = None;
                last_err = Some(e);
            }
        }
        m *= 2;
    }
    Err(last_err.unwrap_or_else(|| {
        Error::Resolution(format!("winding number did not stabilize up to {m_max} points"))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_and_constants() {
        for k in 0..5 {
            let g = CircleGrid::from_fn(64, |z| z.powi(-k));
            assert_eq!(winding_number(&g).unwrap(), -(k as i64));
        }
        let g = CircleGrid::from_fn(16, |_| C64::new(-3.0, 2.0));
        assert_eq!(winding_number(&g).unwrap(), 0);
    }

    #[test]
    fn vanishing_and_coarse_grids_fail() {
        let g = CircleGrid::from_fn(16, |z| z - 1.0);
        assert!(matches!(winding_number(&g), Err(Error::Vanishing(_))));
        let g = CircleGrid::from_fn(8, |z| z.powi(5));
        assert!(matches!(winding_number(&g), Err(Error::Resolution(_))));
        let (w, _) = winding_adaptive(|z| z.powi(5), 8, 1024).unwrap();
        assert_eq!(w, 5);
    }
}
