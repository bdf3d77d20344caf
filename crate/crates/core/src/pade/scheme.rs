//! Interpolation sets `E_n` and schemes `{E_n}`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::cauchy::TargetFunction;
use crate::config::TAU_MARGIN;
use crate::error::{Error, Result};
use crate::hardy::ComplexPoly;

/// Modulus beyond which a node is treated as the point at infinity.
pub const INFINITY_CUTOFF: f64 = 1e12;

/// Multiset of finite nodes plus a count of nodes at infinity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationSet {
    points: Vec<C64>,
    #[serde(default)]
    at_infinity: usize,
}

impl InterpolationSet {
    /// Finite points must be finite numbers; points of huge modulus are
    /// moved to infinity.
    pub fn new(points: Vec<C64>, at_infinity: usize) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.re.is_nan() || p.im.is_nan()) {
            return Err(Error::Invalid(format!("interpolation node {p} is not a number")));
        }
        let (finite, inf): (Vec<C64>, Vec<C64>) = points.into_iter().partition(|p| p.norm() < INFINITY_CUTOFF);
        Ok(Self { points: finite, at_infinity: at_infinity + inf.len() })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `n` nodes at infinity.
    pub fn at_infinity_only(n: usize) -> Self {
        Self { points: Vec::new(), at_infinity: n }
    }

    /// Reflections `1/conj(ξ)` of the given roots; roots at the origin
    /// become nodes at infinity.
    pub fn reflected(roots: &[C64]) -> Self {
        let mut points = Vec::with_capacity(roots.len());
        let mut at_infinity = 0;
        for r in roots {
            if r.norm() * INFINITY_CUTOFF <= 1.0 {
                at_infinity += 1;
            } else {
                points.push(r.conj().inv());
            }
        }
        Self { points, at_infinity }
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn at_infinity(&self) -> usize {
        self.at_infinity
    }

    /// Cardinality counting nodes at infinity.
    pub fn len(&self) -> usize {
        self.points.len() + self.at_infinity
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every node repeated twice.
    pub fn doubled(&self) -> Self {
        let points = self.points.iter().flat_map(|&p| [p, p]).collect();
        Self { points, at_infinity: 2 * self.at_infinity }
    }

    /// The same multiset with the nodes of `other` added.
    pub fn union(&self, other: &Self) -> Self {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        Self { points, at_infinity: self.at_infinity + other.at_infinity }
    }

    /// Distinct finite nodes with multiplicities; nodes closer than a
    /// relative `1e-12` are merged.
    pub fn grouped(&self) -> Vec<(C64, usize)> {
        let mut out: Vec<(C64, usize)> = Vec::new();
        for &p in &self.points {
            match out.iter_mut().find(|(q, _)| (p - *q).norm() <= 1e-12 * (1.0 + p.norm())) {
                Some(entry) => entry.1 += 1,
                None => out.push((p, 1)),
            }
        }
        out
    }

    /// `v(z) = Π (z − e)` over the finite nodes.
    pub fn v_poly(&self) -> ComplexPoly {
        ComplexPoly::from_roots(&self.points)
    }

    /// Checks that every finite node lies off `[a, b] ∪ Λ`.
    pub fn validate(&self, target: &TargetFunction) -> Result<()> {
        for &e in &self.points {
            let d = target.singular_distance(e);
            if d <= TAU_MARGIN {
                return Err(Error::Domain(format!(
                    "interpolation node {e} is at distance {d:.3e} from the singular set"
                )));
            }
        }
        Ok(())
    }
}

/// Origin of a scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    User,
    ReflectedCritical,
    ComparisonConstruction,
}

/// Sequence of sets, each `E_n` holding `n` nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationScheme {
    sets: Vec<InterpolationSet>,
    provenance: Provenance,
}

impl InterpolationScheme {
    /// Sets are sorted by cardinality, which must be distinct.
    pub fn new(mut sets: Vec<InterpolationSet>, provenance: Provenance) -> Result<Self> {
        sets.sort_by_key(InterpolationSet::len);
        if let Some(w) = sets.windows(2).find(|w| w[0].len() == w[1].len()) {
            return Err(Error::Invalid(format!("two sets of cardinality {} in one scheme", w[0].len())));
        }
        Ok(Self { sets, provenance })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Self = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("scheme: {e}")))?;
        let sets = raw
            .sets
            .into_iter()
            .map(|s| InterpolationSet::new(s.points, s.at_infinity))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets, raw.provenance)
    }

    pub fn sets(&self) -> &[InterpolationSet] {
        &self.sets
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `E_n`, if present.
    pub fn get(&self, n: usize) -> Option<&InterpolationSet> {
        self.sets.iter().find(|s| s.len() == n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn reflection_and_doubling() {
        let e = InterpolationSet::reflected(&[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.25)]);
        assert_eq!(e.at_infinity(), 1);
        assert!((e.points()[0] - 2.0).norm() < 1e-15);
        assert!((e.points()[1] - c(0.0, 4.0)).norm() < 1e-15);
        let d = e.doubled();
        assert_eq!(d.len(), 6);
        assert_eq!(d.grouped(), vec![(c(2.0, 0.0), 2), (c(0.0, 4.0), 2)]);
    }

    #[test]
    fn scheme_json_roundtrip() {
        let s = InterpolationScheme::new(
            vec![InterpolationSet::new(vec![c(2.0, 0.0)], 1).unwrap(), InterpolationSet::at_infinity_only(1)],
            Provenance::ReflectedCritical,
        )
        .unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"provenance\":\"reflected-critical\""));
        assert!(text.contains("\"at_infinity\":1"));
        let back = InterpolationScheme::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.get(2).unwrap().points(), &[c(2.0, 0.0)]);
        let dup = vec![InterpolationSet::at_infinity_only(1), InterpolationSet::new(vec![c(3.0, 0.0)], 0).unwrap()];
        assert!(InterpolationScheme::new(dup, Provenance::User).is_err());
    }
}
