//! Fixed-point iteration through Padé approximants, Newton polish, and
//! multi-start search.
//!
//! A critical `q` is a fixed point of the map sending `q` to the denominator
//! of the Padé approximant interpolating `𝔉` twice at the reflections
//! `1/conj(ξ)` of its zeros. The iteration runs until the zeros move by less
//! than the switch distance, after which Newton steps on the gradient, with
//! a finite-difference Jacobian and backtracking on the gradient norm, drive
//! the gradient below `tol_crit`.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::functional::{Functional, State};
use super::hessian::{hessian_from_state, morse_index};
use super::irreducibility_check;
use crate::cauchy::Segment;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::hardy::{ComplexPoly, MonicPoly};
use crate::pade::{build_pade_doubled, InterpolationSet};

/// Largest modulus kept after reflecting an escaped zero into the disk.
const REFLECT_CAP: f64 = 0.999;

/// Relative step of the finite-difference Jacobian.
const FD_STEP: f64 = 1e-6;

/// Backtracking halvings per Newton step.
const MAX_HALVINGS: usize = 40;

/// Ratio of successive fixed-point displacements above which the
/// iteration hands over to Newton inside the switch distance.
const SLOW_CONTRACTION: f64 = 0.9;

/// Newton steps taken after the gradient first drops below `tol_crit`,
/// each kept only if it lowers the gradient further.
const POLISH_STEPS: usize = 3;

/// Modulus above which random starting zeros are redrawn.
const START_RADIUS: f64 = 0.98;

/// A converged critical point of `φ_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPointRecord {
    pub degree: usize,
    /// Coefficients of `q` in increasing powers, the leading 1 included.
    pub q_coeffs: Vec<C64>,
    /// Coefficients of `L_q` in increasing powers.
    #[serde(rename = "L_coeffs")]
    pub l_coeffs: Vec<C64>,
    pub value: f64,
    pub grad_norm: f64,
    /// Eigenvalues of the real Hessian in increasing order; empty when the
    /// Hessian was not formed.
    pub hessian_eigs: Vec<f64>,
    /// `None` when the Hessian is degenerate or was not formed.
    pub morse_index: Option<usize>,
    pub irreducible: bool,
    /// Zeros of `q` sorted by real then imaginary part.
    pub poles: Vec<C64>,
    pub iterations: usize,
    pub flags: Vec<String>,
}

impl CriticalPointRecord {
    pub fn q(&self) -> Result<MonicPoly> {
        MonicPoly::new(ComplexPoly::from_raw(self.q_coeffs.clone()))
    }

    pub fn l(&self) -> ComplexPoly {
        ComplexPoly::from_raw(self.l_coeffs.clone())
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

/// Phase of the solver that produced an iterate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    FixedPoint,
    Newton,
}

/// One logged iterate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IterateRecord {
    pub iteration: usize,
    pub stage: Stage,
    /// `‖u_q‖²`.
    pub value: f64,
    /// `‖𝔉 − L_q/q‖²`.
    pub value_direct: f64,
    pub grad_norm: f64,
    /// Root displacement from the previous iterate.
    pub displacement: f64,
}

/// A converged record with its iterate log and, for a reducible record,
/// the critical point found after dividing out the common zeros.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub record: CriticalPointRecord,
    pub log: Vec<IterateRecord>,
    pub reduced: Option<Box<SolveOutcome>>,
}

/// Initial denominator.
#[derive(Clone, Debug)]
pub enum Start {
    Poly(MonicPoly),
    /// Zeros drawn by [`random_start`] from this seed.
    Seed(u64),
}

/// Zeros drawn uniformly from the ellipse with foci `a, b` whose semiaxes
/// sum to `max(0.9, 1.05·(b − a)/2)`, redrawing any with modulus ≥ 0.98.
pub fn random_start(segment: &Segment, n: usize, rng: &mut impl Rng) -> MonicPoly {
    let s = segment.half_width();
    let sum = (1.05 * s).max(0.9);
    let major = (sum + s * s / sum) / 2.0;
    let minor = (sum - s * s / sum) / 2.0;
    let center = segment.center();
    let mut roots = Vec::with_capacity(n);
    while roots.len() < n {
        let r = rng.random::<f64>().sqrt();
        let t = rng.random::<f64>() * std::f64::consts::TAU;
        let z = C64::new(center + major * r * t.cos(), minor * r * t.sin());
        if z.norm() < START_RADIUS {
            roots.push(z);
        }
    }
    MonicPoly::from_roots(&roots)
}

/// Generator for start `index` at `degree` under `seed`.
pub fn start_rng(seed: u64, degree: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((degree as u64) << 32) | index as u64);
    rng
}

/// Largest distance between matched roots, matching each root of `a` to
/// its nearest unused root of `b`, symmetrized.
pub fn root_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn one_way(a: &[C64], b: &[C64]) -> f64 {
        let mut used = vec![false; b.len()];
        let mut worst: f64 = 0.0;
        for x in a {
            let (i, d) = b
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, y)| (i, (x - y).norm()))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("equal lengths");
            used[i] = true;
            worst = worst.max(d);
        }
        worst
    }
    one_way(a, b).max(one_way(b, a))
}

fn sorted_roots(q: &MonicPoly) -> Vec<C64> {
    let mut r = q.roots();
    r.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    r
}

/// Reflects zeros outside `|z| < 1 − margin` across the circle, capped at
/// [`REFLECT_CAP`]. Returns whether any zero moved.
fn reflect_into_disk(roots: &[C64]) -> (Vec<C64>, bool) {
    let mut moved = false;
    let out = roots
        .iter()
        .map(|&z| {
            if z.norm() < REFLECT_CAP {
                return z;
            }
            moved = true;
            let r = (1.0 / z.norm()).min(REFLECT_CAP);
            C64::from_polar(r, z.arg())
        })
        .collect();
    (out, moved)
}

fn to_real(q: &MonicPoly) -> Vec<f64> {
    let l = q.lower();
    l.iter().map(|c| c.re).chain(l.iter().map(|c| c.im)).collect()
}

fn from_real(x: &[f64]) -> MonicPoly {
    let n = x.len() / 2;
    let lower: Vec<C64> = (0..n).map(|k| C64::new(x[k], x[n + k])).collect();
    MonicPoly::from_lower(&lower)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Jacobian of the real gradient by central differences.
fn fd_jacobian(f: &Functional, x: &[f64]) -> Result<DMatrix<f64>> {
    let d = x.len();
    let mut jac = DMatrix::zeros(d, d);
    for a in 0..d {
        let h = FD_STEP * x[a].abs().max(1.0);
        let mut xp = x.to_vec();
        xp[a] += h;
        let mut xm = x.to_vec();
        xm[a] -= h;
        let gp = f.state(&from_real(&xp))?.real_gradient();
        let gm = f.state(&from_real(&xm))?.real_gradient();
        for b in 0..d {
            jac[(b, a)] = (gp[b] - gm[b]) / (2.0 * h);
        }
    }
    // The Jacobian of a gradient is symmetric.
    Ok((&jac + jac.transpose()) * 0.5)
}

struct Run<'a> {
    f: &'a Functional,
    tol: &'a Tolerances,
    log: Vec<IterateRecord>,
    flags: BTreeSet<String>,
    iterations: usize,
}

impl Run<'_> {
    fn record(&mut self, stage: Stage, q: &MonicPoly, prev: Option<&[C64]>) -> Result<State> {
        let ev = self.f.evaluate(q)?;
        let displacement = prev.map_or(f64::NAN, |p| root_distance(p, &q.roots()));
        self.log.push(IterateRecord {
            iteration: self.iterations,
            stage,
            value: ev.value,
            value_direct: ev.value_direct,
            grad_norm: ev.state.grad_norm(),
            displacement,
        });
        Ok(ev.state)
    }

    /// Runs the Padé map until the zeros move less than
    /// `fixed_point_stop`. Returns the last iterate and whether that
    /// happened; the iteration is abandoned for Newton when it contracts
    /// slowly inside the switch distance or fails to produce `n` zeros.
    fn fixed_point(&mut self, mut q: MonicPoly) -> Result<(MonicPoly, bool)> {
        let n = q.degree();
        let mut prev_d = f64::INFINITY;
        for _ in 0..self.tol.fixed_point_max_iter {
            let roots = q.roots();
            self.record(Stage::FixedPoint, &q, None)?;
            let pade = match build_pade_doubled(self.f.target(), &InterpolationSet::reflected(&roots)) {
                Ok(p) if !p.degenerate() && p.unreduced_poles().len() == n => p,
                _ => return Ok((q, false)),
            };
            let (next, moved) = reflect_into_disk(pade.unreduced_poles());
            if moved {
                self.flags.insert("escape-reflected".into());
            }
            let d = root_distance(&roots, &next);
            q = MonicPoly::from_roots(&next);
            self.iterations += 1;
            if let Some(last) = self.log.last_mut() {
                last.displacement = d;
            }
            if d < self.tol.fixed_point_stop {
                return Ok((q, true));
            }
            if d < self.tol.newton_switch && d > SLOW_CONTRACTION * prev_d {
                return Ok((q, false));
            }
            prev_d = d;
        }
        Ok((q, false))
    }

    fn settled(&mut self, q: MonicPoly) -> Result<State> {
        let st = self.record(Stage::FixedPoint, &q, None)?;
        if st.grad_norm() < self.tol.tol_crit {
            return Ok(st);
        }
        self.newton(q)
    }

    fn newton(&mut self, mut q: MonicPoly) -> Result<State> {
        let mut st = self.record(Stage::Newton, &q, None)?;
        let mut polish = 0;
        for _ in 0..self.tol.newton_max_iter {
            let g = st.real_gradient();
            let gn = norm(&g);
            if gn < self.tol.tol_crit {
                if polish == POLISH_STEPS {
                    return Ok(st);
                }
                polish += 1;
            }
            let x = to_real(&q);
            let jac = fd_jacobian(self.f, &x)?;
            let svd = jac.svd(true, true);
            let smax = svd.singular_values.max();
            let step = svd
                .solve(&DVector::from_iterator(g.len(), g.iter().map(|v| -v)), 1e-14 * smax)
                .map_err(|e| Error::NoConvergence(format!("Newton system: {e}")))?;
            let mut t = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let xt: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + t * b).collect();
                let mut qt = from_real(&xt);
                let (roots, moved) = reflect_into_disk(&qt.roots());
                if moved {
                    qt = MonicPoly::from_roots(&roots);
                }
                if let Ok(s) = self.f.state(&qt) {
                    if s.grad_norm() < (1.0 - 1e-4 * t) * gn {
                        if moved {
                            self.flags.insert("escape-reflected".into());
                        }
                        accepted = Some((qt, s));
                        break;
                    }
                }
                t *= 0.5;
            }
            let Some((qn, _)) = accepted else { break };
            let prev = q.roots();
            q = qn;
            self.iterations += 1;
            st = self.record(Stage::Newton, &q, Some(&prev))?;
        }
        if st.grad_norm() < self.tol.tol_crit {
            return Ok(st);
        }
        let tail: Vec<String> = self
            .log
            .iter()
            .rev()
            .take(6)
            .rev()
            .map(|r| format!("#{} {:?} φ={:.6e} |∇|={:.3e}", r.iteration, r.stage, r.value, r.grad_norm))
            .collect();
        Err(Error::NoConvergence(format!(
            "gradient norm {:.3e} after {} iterations; last iterates: {}",
            st.grad_norm(),
            self.iterations,
            tail.join("; ")
        )))
    }
}

/// Finds a critical point of `φ_n` from `start`.
pub fn solve_critical(f: &Functional, n: usize, start: &Start, tol: &Tolerances) -> Result<SolveOutcome> {
    if n == 0 {
        return Err(Error::Degree("degree must be at least 1".into()));
    }
    let target = f.target();
    if target.measure().is_none() && target.rational().degree() < n {
        return Err(Error::Precondition(format!(
            "the target is rational of degree {} < {n}, so φ_{n} vanishes on a lower-degree denominator",
            target.rational().degree()
        )));
    }
    let q0 = match start {
        Start::Poly(q) => q.clone(),
        Start::Seed(s) => random_start(target.segment(), n, &mut start_rng(*s, n, 0)),
    };
    if q0.degree() != n {
        return Err(Error::Degree(format!("start has degree {} but {n} was requested", q0.degree())));
    }
    let (roots, moved) = reflect_into_disk(&q0.roots());
    let mut run = Run { f, tol, log: Vec::new(), flags: BTreeSet::new(), iterations: 0 };
    if moved {
        run.flags.insert("escape-reflected".into());
    }
    let (q, settled) = run.fixed_point(MonicPoly::from_roots(&roots))?;
    // A settled fixed point is polished no further: at high degree the
    // gradient sits at its rounding floor and Newton steps would only
    // follow noise.
    let st = if settled { run.settled(q)? } else { run.newton(q)? };
    finish(f, st, run, tol)
}

fn finish(f: &Functional, st: State, run: Run<'_>, tol: &Tolerances) -> Result<SolveOutcome> {
    let Run { log, mut flags, iterations, .. } = run;
    let q = st.q.clone();
    let n = q.degree();
    let value = f.evaluate(&q)?.value;
    let poles = sorted_roots(&q);
    if poles.iter().any(|z| z.norm() > tol.boundary_suspect) {
        flags.insert("boundary-suspect".into());
    }
    let (irreducible, gcd) = irreducibility_check(&st.l, &q, tol.tau_gcd);
    let mut hessian_eigs = Vec::new();
    let mut morse = None;
    if irreducible {
        match hessian_from_state(&st) {
            Ok(h) => {
                hessian_eigs = h.eigenvalues();
                match morse_index(&h) {
                    Ok(m) => morse = Some(m),
                    Err(_) => {
                        flags.insert("degenerate-hessian".into());
                    }
                }
            }
            Err(_) => {
                flags.insert("hessian-failed".into());
            }
        }
    } else {
        flags.insert("reducible".into());
    }
    let record = CriticalPointRecord {
        degree: n,
        q_coeffs: q.poly().padded(n + 1),
        l_coeffs: st.l.padded(n),
        value,
        grad_norm: st.grad_norm(),
        hessian_eigs,
        morse_index: morse,
        irreducible,
        poles,
        iterations,
        flags: flags.into_iter().collect(),
    };
    let reduced = if !irreducible && gcd < n {
        let common = crate::pade::common_roots(&st.l.roots(), &q.roots(), tol.tau_gcd);
        let mut rest = q.roots();
        for c in common {
            if let Some(i) = (0..rest.len()).min_by(|&i, &j| (rest[i] - c).norm().total_cmp(&(rest[j] - c).norm())) {
                rest.remove(i);
            }
        }
        solve_critical(f, rest.len(), &Start::Poly(MonicPoly::from_roots(&rest)), tol).ok().map(Box::new)
    } else {
        None
    };
    Ok(SolveOutcome { record, log, reduced })
}

/// A start that did not converge.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StartFailure {
    pub start: usize,
    pub message: String,
}

/// Signed count of the distinct nondegenerate interior critical points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexAudit {
    pub counted: usize,
    /// `Σ (−1)^{M(q)}`.
    pub index_sum: i64,
    pub warning: Option<String>,
}

/// Critical points found from many starts at one degree.
#[derive(Clone, Debug)]
pub struct MultistartResult {
    pub degree: usize,
    /// Distinct critical points, in order of first discovery.
    pub records: Vec<CriticalPointRecord>,
    /// Index into `records` for each start, `None` for failed starts.
    pub assignment: Vec<Option<usize>>,
    pub failures: Vec<StartFailure>,
    /// Critical points of lower degree reached from reducible records.
    pub reduced: Vec<CriticalPointRecord>,
    /// Iterate logs of the converged starts.
    pub logs: Vec<Vec<IterateRecord>>,
    pub audit: IndexAudit,
}

impl MultistartResult {
    pub fn converged(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }
}

/// Runs `starts` seeded starts at degree `n` in parallel and deduplicates
/// the results by root distance. Start `i` draws its zeros from the stream
/// `(n << 32) | i` of a generator seeded with `seed`.
pub fn multistart(f: &Functional, n: usize, starts: usize, seed: u64, tol: &Tolerances) -> MultistartResult {
    let outcomes: Vec<Result<SolveOutcome>> = (0..starts)
        .into_par_iter()
        .map(|i| {
            let q0 = random_start(f.target().segment(), n, &mut start_rng(seed, n, i));
            solve_critical(f, n, &Start::Poly(q0), tol)
        })
        .collect();
    let mut records: Vec<CriticalPointRecord> = Vec::new();
    let mut assignment = Vec::with_capacity(starts);
    let mut failures = Vec::new();
    let mut reduced: Vec<CriticalPointRecord> = Vec::new();
    let mut logs = Vec::new();
    for (i, out) in outcomes.into_iter().enumerate() {
        match out {
            Ok(o) => {
                let idx = records
                    .iter()
                    .position(|r| root_distance(&r.poles, &o.record.poles) < tol.dedup_distance)
                    .unwrap_or_else(|| {
                        records.push(o.record.clone());
                        records.len() - 1
                    });
                assignment.push(Some(idx));
                if let Some(red) = o.reduced {
                    if !reduced.iter().any(|r| {
                        r.degree == red.record.degree
                            && root_distance(&r.poles, &red.record.poles) < tol.dedup_distance
                    }) {
                        reduced.push(red.record);
                    }
                }
                logs.push(o.log);
            }
            Err(e) => {
                assignment.push(None);
                failures.push(StartFailure { start: i, message: e.to_string() });
            }
        }
    }
    let audit = index_audit(&records);
    MultistartResult { degree: n, records, assignment, failures, reduced, logs, audit }
}

/// `Σ (−1)^{M(q)}` over the nondegenerate interior irreducible records; a
/// sum other than 1 with at least two such points signals missed critical
/// points.
pub fn index_audit(records: &[CriticalPointRecord]) -> IndexAudit {
    let counted: Vec<usize> = records
        .iter()
        .filter(|r| r.irreducible && !r.has_flag("boundary-suspect"))
        .filter_map(|r| r.morse_index)
        .collect();
    let index_sum = counted.iter().map(|&m| if m % 2 == 0 { 1 } else { -1 }).sum::<i64>();
    let warning = (counted.len() >= 2 && index_sum != 1).then(|| {
        format!(
            "{} nondegenerate critical points have index sum {index_sum}; some critical points were not found",
            counted.len()
        )
    });
    IndexAudit { counted: counted.len(), index_sum, warning }
}
