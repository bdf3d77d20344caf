//! JSON description of a target `𝔉 = f_μ + r`.
//!
//! ```json
//! {"a": -0.5, "b": 0.5,
//!  "density": {"kind": "expr", "expr": "exp(0.3*i*t)"},
//!  "rational": [{"pole": [2.0, 0.0], "mult": 1, "coeffs": [[1.0, 0.0]]}]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs. Omitting `density` gives a purely
//! rational target with `[a, b]` as reference segment.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::measure::MeasureM;
use super::target::{Pole, RationalPart, TargetFunction};
use crate::error::{Error, Result};

/// Density of the measure against the arcsine distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DensityInput {
    /// Values at the Gauss-Chebyshev nodes of `[a, b]`, increasing `t`.
    Samples { values: Vec<C64> },
    /// Expression in `t`, see [`crate::cauchy::Expr`].
    Expr { expr: String },
    Constant { value: C64 },
}

/// One principal part; `coeffs[j]` multiplies `(z − pole)^{−j−1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleInput {
    pub pole: C64,
    pub mult: usize,
    pub coeffs: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetInput {
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityInput>,
    #[serde(default)]
    pub rational: Vec<PoleInput>,
}

impl TargetInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("target: {e}")))
    }

    /// Validates and builds the target.
    pub fn build(&self) -> Result<TargetFunction> {
        if !(self.a < self.b) {
            return Err(Error::Invalid(format!("a < b required, got a = {}, b = {}", self.a, self.b)));
        }
        if !(self.a > -1.0 && self.b < 1.0) {
            return Err(Error::Invalid(format!(
                "interval must lie in (-1, 1), got a = {}, b = {}",
                self.a, self.b
            )));
        }
        let mut poles = Vec::with_capacity(self.rational.len());
        for (i, p) in self.rational.iter().enumerate() {
            if p.mult != p.coeffs.len() {
                return Err(Error::Invalid(format!(
                    "rational[{i}]: mult = {} but {} coeffs given",
                    p.mult,
                    p.coeffs.len()
                )));
            }
            poles.push(Pole { location: p.pole, coeffs: p.coeffs.clone() });
        }
        let rational = RationalPart::new(poles)?;
        let measure = match &self.density {
            None => return TargetFunction::rational_only(rational, self.a, self.b),
            Some(DensityInput::Samples { values }) => MeasureM::from_samples(self.a, self.b, values)?,
            Some(DensityInput::Expr { expr }) => MeasureM::from_expr(self.a, self.b, expr)?,
            Some(DensityInput::Constant { value }) => MeasureM::constant(self.a, self.b, *value)?,
        };
        TargetFunction::new(measure, rational)
    }
}
