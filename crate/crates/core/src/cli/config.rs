//! Experiment configuration files.
//!
//! ```json
//! {"target": {"a": -0.4, "b": 0.4, "density": {"kind": "constant", "value": [1, 0]}},
//!  "degrees": {"from": 2, "to": 6},
//!  "starts": 20,
//!  "seed": 42,
//!  "outputs": "out"}
//! ```

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cauchy::{TargetFunction, TargetInput};
use crate::certify::Contour;
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Largest degree a configuration may request.
pub const MAX_DEGREE: usize = 64;

/// Degrees as an inclusive range or an explicit list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeSpec {
    Range { from: usize, to: usize },
    List(Vec<usize>),
}

impl DegreeSpec {
    /// Sorted, without repetitions.
    pub fn expand(&self) -> Vec<usize> {
        let mut v: Vec<usize> = match self {
            DegreeSpec::Range { from, to } => (*from..=*to).collect(),
            DegreeSpec::List(l) => l.clone(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn default_outputs() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub target: TargetInput,
    pub degrees: DegreeSpec,
    pub starts: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Contour of the asymptotics check; `|z| = 2` with 512 points if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour: Option<Contour>,
    #[serde(default = "default_outputs")]
    pub outputs: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks the degrees and start count and builds the target.
    pub fn validate(&self) -> Result<TargetFunction> {
        let degrees = self.degrees.expand();
        if degrees.is_empty() {
            return Err(Error::Invalid("degrees: at least one degree is required".into()));
        }
        if degrees[0] == 0 {
            return Err(Error::Invalid("degrees: degree 0 has no critical points".into()));
        }
        if let Some(&max) = degrees.last() {
            if max > MAX_DEGREE {
                return Err(Error::Invalid(format!("degrees: {max} exceeds the maximum {MAX_DEGREE}")));
            }
        }
        if self.starts == 0 {
            return Err(Error::Invalid("starts: at least one start is required".into()));
        }
        self.target.build().map_err(|e| match e {
            Error::Invalid(m) => Error::Invalid(format!("target: {m}")),
            other => other,
        })
    }

    pub fn contour(&self) -> Contour {
        self.contour.unwrap_or_default()
    }

    /// SHA-256 of the compact JSON serialization.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("configs serialize");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"target": {"a": -0.4, "b": 0.4, "density": {"kind": "constant", "value": [1, 0]}},
        "degrees": {"from": 2, "to": 4}, "starts": 3, "seed": 1}"#;

    #[test]
    fn parses_ranges_and_lists() {
        let cfg = ExperimentConfig::from_json(BASE).unwrap();
        assert_eq!(cfg.degrees.expand(), vec![2, 3, 4]);
        assert_eq!(cfg.outputs, PathBuf::from("out"));
        let list = BASE.replace(r#"{"from": 2, "to": 4}"#, "[5, 3, 3]");
        assert_eq!(ExperimentConfig::from_json(&list).unwrap().degrees.expand(), vec![3, 5]);
    }

    #[test]
    fn validation_names_the_field() {
        let cases = [
            (BASE.replace(r#"{"from": 2, "to": 4}"#, "[]"), "degrees"),
            (BASE.replace(r#"{"from": 2, "to": 4}"#, "[65]"), "degrees"),
            (BASE.replace(r#""starts": 3"#, r#""starts": 0"#), "starts"),
            (BASE.replace(r#""a": -0.4, "b": 0.4"#, r#""a": 0.5, "b": 0.3"#), "a < b required"),
        ];
        for (text, needle) in cases {
            let msg = ExperimentConfig::from_json(&text).unwrap_err().to_string();
            assert!(msg.contains(needle), "{msg}");
        }
    }

    #[test]
    fn hash_depends_on_content() {
        let a = ExperimentConfig::from_json(BASE).unwrap();
        let b = ExperimentConfig::from_json(&BASE.replace(r#""seed": 1"#, r#""seed": 2"#)).unwrap();
        assert_eq!(a.hash(), ExperimentConfig::from_json(BASE).unwrap().hash());
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
