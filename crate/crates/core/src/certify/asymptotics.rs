//! Pointwise check of `(𝔉 − Π_n)w ≈ 2G_μ̇ (D_μ̇ R_n/R)²` on a contour.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{csv_string, fmt_f64};
use crate::cauchy::{SzegoData, TargetFunction};
use crate::config::{CONTOUR_POINTS, CONTOUR_RADIUS, TAU_MARGIN};
use crate::critical::CriticalPointRecord;
use crate::error::{Error, Result};
use crate::pade::{blaschke_product_points, blaschke_product_rn, build_pade_doubled, InterpolationScheme, InterpolationSet};

/// Agreement required between `L_q/q` and the Padé approximant on the
/// reflected roots, relative to the size of `L_q/q` on the contour.
const REFLECTED_AGREEMENT: f64 = 1e-8;

/// Circle `|z| = radius` sampled at `points` equispaced points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub radius: f64,
    pub points: usize,
}

impl Default for Contour {
    fn default() -> Self {
        Self { radius: CONTOUR_RADIUS, points: CONTOUR_POINTS }
    }
}

impl Contour {
    fn nodes(&self) -> Vec<C64> {
        (0..self.points)
            .map(|j| C64::from_polar(self.radius, std::f64::consts::TAU * j as f64 / self.points as f64))
            .collect()
    }
}

/// Where the approximants come from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    /// `Π_n` built on `E_n` of the scheme.
    Scheme(&'a InterpolationScheme),
    /// `L_q/q` of critical points, as the Padé approximant on the
    /// reflections of the roots.
    Critical(&'a [CriticalPointRecord]),
}

/// One degree of the comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    /// `sup |(𝔉 − Π_n)w|`.
    pub sup_error: f64,
    /// `sup |2G (D R_n/R)²|`.
    pub predicted: f64,
    /// `sup |actual/predicted − 1|`, pointwise.
    pub ratio_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsReport {
    pub contour: Contour,
    /// Increasing in `n`.
    pub rows: Vec<AsymptoticsRow>,
}

impl AsymptoticsReport {
    pub const CSV_HEADER: [&'static str; 4] = ["n", "sup_error", "predicted", "ratio_deviation"];

    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &Self::CSV_HEADER,
            self.rows.iter().map(|r| {
                vec![r.n.to_string(), fmt_f64(r.sup_error), fmt_f64(r.predicted), fmt_f64(r.ratio_deviation)]
            }),
        )
    }
}

/// Compares `(𝔉 − Π_n)w` with `2G_μ̇ (D_μ̇ R_n/R)²` pointwise on the
/// contour for each `n` in `degrees`, `R` running over the poles of the
/// rational part.
pub fn verify_strong_asymptotics(
    target: &TargetFunction,
    source: Source<'_>,
    degrees: &[usize],
    contour: Contour,
) -> Result<AsymptoticsReport> {
    let measure = target
        .measure()
        .ok_or_else(|| Error::Precondition("strong asymptotics need a measure part".into()))?;
    check_contour(target, &contour)?;
    let szego = SzegoData::from_measure(measure)?;
    let seg = *target.segment();
    let gm = szego.gm();
    let pole_points: Vec<C64> = target
        .rational()
        .poles()
        .iter()
        .flat_map(|p| std::iter::repeat_n(p.location, p.multiplicity()))
        .collect();
    let zs = contour.nodes();
    // n-independent factors: w, D² and 1/R².
    let fixed: Vec<(C64, C64)> = zs
        .iter()
        .map(|&z| {
            let r = blaschke_product_points(&seg, &pole_points, z)?;
            let d = szego.eval(z)?;
            Ok((seg.w(z)?, gm * 2.0 * (d / r).powu(2)))
        })
        .collect::<Result<_>>()?;
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut rows = Vec::with_capacity(sorted.len());
    for n in sorted {
        let (set, record) = match source {
            Source::Scheme(s) => {
                let e = s.get(n).ok_or_else(|| Error::Invalid(format!("the scheme has no set of size {n}")))?;
                (e.clone(), None)
            }
            Source::Critical(recs) => {
                let rec = recs
                    .iter()
                    .find(|r| r.degree == n)
                    .ok_or_else(|| Error::Invalid(format!("no critical point of degree {n}")))?;
                (InterpolationSet::reflected(&rec.poles), Some(rec))
            }
        };
        let pi = build_pade_doubled(target, &set)?;
        if let Some(rec) = record {
            check_reflected(rec, &pi, &zs)?;
        }
        let mut row = AsymptoticsRow { n, sup_error: 0.0, predicted: 0.0, ratio_deviation: 0.0 };
        for (&z, &(w, base)) in zs.iter().zip(&fixed) {
            let actual = pi.error(target, z)? * w;
            let predicted = base * blaschke_product_rn(&seg, &set, z)?.powu(2);
            row.sup_error = row.sup_error.max(actual.norm());
            row.predicted = row.predicted.max(predicted.norm());
            row.ratio_deviation = row.ratio_deviation.max((actual / predicted - 1.0).norm());
        }
        rows.push(row);
    }
    Ok(AsymptoticsReport { contour, rows })
}

fn check_contour(target: &TargetFunction, contour: &Contour) -> Result<()> {
    if contour.points < 4 || !(contour.radius > 0.0) {
        return Err(Error::Invalid("a contour needs a positive radius and at least four points".into()));
    }
    let seg = target.segment();
    let rho = contour.radius;
    let near = if seg.a <= 0.0 && seg.b >= 0.0 { 0.0 } else { seg.a.abs().min(seg.b.abs()) };
    let far = seg.a.abs().max(seg.b.abs());
    if rho >= near - TAU_MARGIN && rho <= far + TAU_MARGIN {
        return Err(Error::Domain(format!("the circle |z| = {rho} meets [{}, {}]", seg.a, seg.b)));
    }
    for p in target.rational().poles() {
        if (p.location.norm() - rho).abs() <= TAU_MARGIN * rho.max(1.0) {
            return Err(Error::Domain(format!("the circle |z| = {rho} passes through the pole {}", p.location)));
        }
    }
    Ok(())
}

fn check_reflected(rec: &CriticalPointRecord, pi: &crate::pade::PadeApproximant, zs: &[C64]) -> Result<()> {
    use super::criterion::Approximant;
    let scale = zs.iter().map(|&z| rec.value(z).norm()).fold(0.0, f64::max);
    let gap = zs.iter().map(|&z| (rec.value(z) - pi.eval(z)).norm()).fold(0.0, f64::max);
    if gap > REFLECTED_AGREEMENT * scale {
        return Err(Error::Consistency(format!(
            "degree {}: L_q/q and the Padé approximant on the reflected roots differ by {gap:.3e}",
            rec.degree
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::MeasureM;

    #[test]
    fn contour_through_the_support_is_rejected() {
        let f = TargetFunction::markov(MeasureM::constant(-0.5, 0.5, C64::new(1.0, 0.0)).unwrap());
        let scheme = InterpolationScheme::new(
            vec![InterpolationSet::at_infinity_only(2)],
            crate::pade::Provenance::User,
        )
        .unwrap();
        let bad = Contour { radius: 0.3, points: 64 };
        assert!(matches!(verify_strong_asymptotics(&f, Source::Scheme(&scheme), &[2], bad), Err(Error::Domain(_))));
        let rep = verify_strong_asymptotics(&f, Source::Scheme(&scheme), &[2], Contour::default()).unwrap();
        assert_eq!(rep.rows.len(), 1);
    }
}
