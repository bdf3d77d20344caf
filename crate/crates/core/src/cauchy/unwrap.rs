//! Continuous argument of complex samples.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;

use crate::config::TAU_ZERO;
use crate::error::{Error, Result};

/// Continuous argument along the samples and its total variation.
#[derive(Clone, Debug, PartialEq)]
pub struct Unwrapped {
    pub arg: Vec<f64>,
    pub total_variation: f64,
}

/// Unwraps the argument of `samples` in the given order.
///
/// Neighbouring samples must differ in phase by less than π/2; a larger step
/// means the samples do not resolve the phase and is reported as a
/// resolution error.
pub fn unwrap_argument(samples: &[C64]) -> Result<Unwrapped> {
    let scale = samples.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if let Some((j, v)) = samples
        .iter()
        .enumerate()
        .find(|(_, v)| v.norm() <= TAU_ZERO * scale.max(1.0))
    {
        return Err(Error::Class(format!("sample {j} has modulus {:.3e}", v.norm())));
    }
    let mut arg = Vec::with_capacity(samples.len());
    let mut tv = 0.0;
    if let Some(first) = samples.first() {
        arg.push(first.arg());
    }
    for j in 1..samples.len() {
        let step = (samples[j] / samples[j - 1]).arg();
        if step.abs() >= FRAC_PI_2 {
            return Err(Error::Resolution(format!(
                "phase step {step:.3} between samples {} and {j}",
                j - 1
            )));
        }
        tv += step.abs();
        arg.push(arg[j - 1] + step);
    }
    Ok(Unwrapped { arg, total_variation: tv })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_phase_has_no_variation() {
        let v = vec![C64::new(0.0, 2.0); 10];
        assert_eq!(unwrap_argument(&v).unwrap().total_variation, 0.0);
    }

    #[test]
    fn linear_phase() {
        let ts: Vec<f64> = (0..101).map(|j| -0.5 + j as f64 / 100.0).collect();
        let v: Vec<C64> = ts.iter().map(|t| C64::new(0.0, 0.3 * t).exp()).collect();
        let u = unwrap_argument(&v).unwrap();
        assert!((u.total_variation - 0.3).abs() < 1e-14);
    }

    #[test]
    fn coarse_fast_phase_is_rejected() {
        let v: Vec<C64> = (0..4).map(|j| C64::new(0.0, 2.0 * j as f64).exp()).collect();
        assert!(matches!(unwrap_argument(&v), Err(Error::Resolution(_))));
        let v = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        assert!(matches!(unwrap_argument(&v), Err(Error::Class(_))));
    }
}
