//! Acceptance gate: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratl2::cauchy::{MeasureM, Pole, RationalPart, TargetFunction};
use ratl2::certify::{
    check_comparison_criterion, comparison_for_record, dvp_lower_bound, green_equilibrium, hankel_sigma,
    hankel_symbol, pole_diagnostics, verify_strong_asymptotics, Contour, CriterionReport, SignedMeasureSamples,
    Source,
};
use ratl2::config::Tolerances;
use ratl2::critical::{
    hessian, morse_index, multistart, solve_critical, CriticalPointRecord, Functional, MultistartResult, Start,
};
use ratl2::hardy::{
    circle_points, project_vq, reciprocal_poly, winding_adaptive, CircleGrid, LaurentTail, MonicPoly, PowerSeries,
};
use ratl2::pade::{
    blaschke_product_points, blaschke_product_rn, build_pade_doubled, InterpolationScheme, InterpolationSet,
    Provenance,
};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn markov(a: f64, b: f64) -> TargetFunction {
    TargetFunction::markov(MeasureM::constant(a, b, c(1.0, 0.0)).unwrap())
}

fn complex_density() -> TargetFunction {
    TargetFunction::markov(MeasureM::from_expr(-0.5, 0.5, "exp(0.3*i*t)").unwrap())
}

fn random_roots(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<C64> {
    (0..n)
        .map(|_| C64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random::<f64>() * std::f64::consts::TAU))
        .collect()
}

fn perturbed(q: &MonicPoly, v: &[C64], t: f64) -> MonicPoly {
    let lower: Vec<C64> = q.lower().iter().zip(v).map(|(a, b)| a + b * t).collect();
    MonicPoly::from_lower(&lower)
}

fn sup_on_circle(radius: f64, points: usize, f: impl Fn(C64) -> f64) -> f64 {
    (0..points)
        .map(|j| f(C64::from_polar(radius, std::f64::consts::TAU * j as f64 / points as f64)))
        .fold(0.0, f64::max)
}

/// Multistart runs shared by several criteria.
struct Runs {
    markov: Vec<MultistartResult>,
    complex: Vec<MultistartResult>,
    theorem_a: Vec<MultistartResult>,
    theorem_a_time: Duration,
    markov_criterion: Vec<(CriticalPointRecord, CriterionReport)>,
}

impl Runs {
    fn new() -> Self {
        let tol = Tolerances::default();
        let fm = Functional::new(markov(-0.5, 0.5)).unwrap();
        let fc = Functional::new(complex_density()).unwrap();
        let fa = Functional::new(markov(-0.4, 0.4)).unwrap();
        let clock = Instant::now();
        let theorem_a = (2..=6).map(|n| multistart(&fa, n, 20, 2024, &tol)).collect();
        let theorem_a_time = clock.elapsed();
        Self {
            markov: (1..=8).map(|n| multistart(&fm, n, 4, 7, &tol)).collect(),
            complex: (2..=8).map(|n| multistart(&fc, n, 20, 2024, &tol)).collect(),
            theorem_a,
            theorem_a_time,
            markov_criterion: Vec::new(),
        }
    }
}

fn best(r: &MultistartResult) -> Option<&CriticalPointRecord> {
    r.records.iter().filter(|r| r.irreducible).min_by(|a, b| a.value.total_cmp(&b.value))
}

// 1. Hardy-space identities on random inputs.
fn hardy_core() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = [0.0f64; 5];
    for _ in 0..200 {
        let len = rng.random_range(1..40);
        let coeffs: Vec<C64> = (0..len)
            .map(|k| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5) * 0.8f64.powi(k))
            .collect();
        let f = LaurentTail::new(coeffs.clone(), 0.8);
        let coeff_norm = coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        // Parseval: trapezoid norm of the samples against the coefficient norm.
        let grid = f.sample(128);
        worst[0] = worst[0].max((grid.norm() - coeff_norm).abs() / coeff_norm);
        // σ is an isometry and an involution, checked against its definition.
        let g: PowerSeries = f.sigma();
        worst[1] = worst[1].max((g.norm() - coeff_norm).abs() / coeff_norm);
        let back = g.sigma();
        let inv = back.coeffs().iter().zip(&coeffs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let z = C64::from_polar(0.9 * rng.random::<f64>(), rng.random::<f64>() * 6.0);
        let direct = (f.eval_series(1.0 / z.conj())).conj() / z;
        worst[1] = worst[1].max(inv / coeff_norm).max((g.eval(z) - direct).norm() / coeff_norm);
        // |q̃| = |q| on the circle and q̃(z) = z^n conj(q(1/conj z)).
        let n = rng.random_range(1..7);
        let q = MonicPoly::from_roots(&random_roots(&mut rng, n, 0.9));
        let qt = reciprocal_poly(q.poly(), n).unwrap();
        for t in circle_points(64) {
            worst[2] = worst[2].max((qt.eval(t).norm() - q.eval(t).norm()).abs() / q.eval(t).norm());
        }
        let direct = z.powu(n as u32) * q.eval(1.0 / z.conj()).conj();
        worst[3] = worst[3].max((qt.eval(z) - direct).norm() / direct.norm().max(1e-300));
        // f − L/q ⊥ z^j/q, on a grid independent of the projection.
        let l = project_vq(&f, &q).unwrap().poly();
        let m = 4096;
        let fg = f.sample(m);
        let resid: Vec<C64> = fg.samples().iter().zip(fg.points()).map(|(&v, t)| v - l.eval(t) / q.eval(t)).collect();
        let resid = CircleGrid::new(resid).unwrap();
        for j in 0..n {
            let basis = CircleGrid::from_fn(m, |t| t.powu(j as u32) / q.eval(t));
            let ip = resid.inner(&basis).unwrap().norm() / (coeff_norm * basis.norm());
            worst[4] = worst[4].max(ip);
        }
    }
    let names = ["Parseval", "σ isometry/involution", "reciprocal modulus", "reciprocal definition", "orthogonality"];
    for (w, name) in worst.iter().zip(names) {
        ensure(*w < 1e-10, || format!("{name} residual {w:.3e}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("200 cases, worst residual {:.2e}, {:.1?}", worst.iter().fold(0.0f64, |a, &b| a.max(b)), start.elapsed()))
}

// 2. Gradient and Hessian against central finite differences.
fn derivatives() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_g, mut worst_h) = (0.0f64, 0.0f64);
    for target in [markov(-0.5, 0.5), complex_density()] {
        let f = Functional::new(target).unwrap();
        for n in 1..=5 {
            let q = MonicPoly::from_roots(&random_roots(&mut rng, n, 0.7));
            let g = f.state(&q).unwrap().real_gradient();
            let h = 1e-5;
            let mut fd = Vec::with_capacity(2 * n);
            for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
                for k in 0..n {
                    let mut v = vec![c(0.0, 0.0); n];
                    v[k] = dir;
                    fd.push((f.phi_n(&perturbed(&q, &v, h)).unwrap() - f.phi_n(&perturbed(&q, &v, -h)).unwrap()) / (2.0 * h));
                }
            }
            let err = g.iter().zip(&fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            worst_g = worst_g.max(err / g.iter().map(|a| a * a).sum::<f64>().sqrt());

            let rec = solve_critical(&f, n, &Start::Seed(5), &Tolerances::default()).map_err(|e| e.to_string())?.record;
            let q = rec.q().unwrap();
            let form = hessian(&f, &q, 1e-10).map_err(|e| e.to_string())?;
            let phi0 = f.phi_n(&q).unwrap();
            let h = 1e-4;
            for _ in 0..20 {
                let v: Vec<C64> = (0..n).map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
                let fd = (f.phi_n(&perturbed(&q, &v, h)).unwrap() - 2.0 * phi0 + f.phi_n(&perturbed(&q, &v, -h)).unwrap())
                    / (h * h);
                let qv = form.quadratic(&v);
                worst_h = worst_h.max((qv - fd).abs() / qv.abs());
            }
        }
    }
    ensure(worst_g < 1e-6, || format!("gradient relative error {worst_g:.3e}"))?;
    ensure(worst_h < 1e-5, || format!("Hessian relative error {worst_h:.3e}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("gradient {worst_g:.2e}, Hessian {worst_h:.2e}, {:.1?}", start.elapsed()))
}

// 3. Hessian of a single pole in closed form.
fn single_pole_hessian() -> Outcome {
    let mut notes = Vec::new();
    for cc in [0.0, 0.3] {
        let pole = Pole::simple(c(cc, 0.0), c(1.0, 0.0));
        let target = TargetFunction::rational_only(RationalPart::new(vec![pole]).unwrap(), 0.85, 0.95).unwrap();
        let f = Functional::new(target).unwrap();
        let start = Start::Poly(MonicPoly::from_roots(&[c(-0.2, 0.4)]));
        let rec = solve_critical(&f, 1, &start, &Tolerances::default()).map_err(|e| e.to_string())?.record;
        let form = hessian(&f, &rec.q().unwrap(), 1e-10).map_err(|e| e.to_string())?;
        let want = 2.0 / (1.0 - cc * cc).powi(3);
        let dev = (&form.as_real - nalgebra::DMatrix::<f64>::identity(2, 2) * want).abs().max();
        ensure(dev < 1e-8, || format!("c = {cc}: deviation {dev:.3e} from {want}·I"))?;
        let index = morse_index(&form).map_err(|e| e.to_string())?;
        ensure(index == 0, || format!("c = {cc}: Morse index {index}"))?;
        notes.push(format!("c={cc}: {dev:.1e}"));
    }
    Ok(notes.join(", "))
}

// 4. Rational functions of degree ≤ n are reproduced.
fn pade_exactness() -> Outcome {
    let poles = vec![
        Pole::simple(c(0.3, 0.2), c(1.0, -0.5)),
        Pole { location: c(-0.2, -0.4), coeffs: vec![c(0.5, 0.0), c(0.2, 0.1)] },
        Pole::simple(c(0.1, 0.6), c(-0.3, 0.4)),
    ];
    let target = TargetFunction::rational_only(RationalPart::new(poles).unwrap(), -0.5, 0.5).unwrap();
    let exterior = [c(1.5, 0.3), c(-2.0, 1.0), c(0.4, -1.7), c(3.0, 0.0), c(-1.2, -1.2), c(0.0, 2.5)];
    type Scheme = Box<dyn Fn(usize) -> InterpolationSet>;
    let schemes: [(&str, Scheme); 3] = [
        ("infinity", Box::new(InterpolationSet::at_infinity_only)),
        ("exterior points", Box::new(move |n| InterpolationSet::new(exterior[..n].to_vec(), 0).unwrap())),
        ("mixed", Box::new(move |n| InterpolationSet::new(exterior[..n / 2].to_vec(), n - n / 2).unwrap())),
    ];
    let mut worst = 0.0f64;
    for (name, scheme) in &schemes {
        for n in 4..=6 {
            let pi = build_pade_doubled(&target, &scheme(n)).map_err(|e| format!("{name}, n = {n}: {e}"))?;
            let err = sup_on_circle(2.0, 256, |z| (target.eval(z).unwrap() - pi.eval(z)).norm());
            ensure(err < 1e-10, || format!("{name}, n = {n}: sup error {err:.3e}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("degree-4 target, n = 4..6, three schemes, sup error {worst:.2e}"))
}

// 5. ‖𝔉 − L_q/q‖² = ‖u_q‖² along every logged iterate.
fn error_identity(runs: &Runs) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for r in runs.markov.iter().filter(|r| r.degree <= 5) {
        for it in r.logs.iter().flatten() {
            worst = worst.max((it.value_direct - it.value).abs() / it.value);
            count += 1;
        }
    }
    ensure(count > 0, || "no iterates logged".into())?;
    ensure(worst < 1e-9, || format!("relative gap {worst:.3e}"))?;
    Ok(format!("{count} iterates, degrees 1..5, worst gap {worst:.2e}"))
}

/// `sup |(𝔉 − Π_n) w R²/R_n² − 2|` on the contour, straight from the
/// definitions.
fn literal_deviation(target: &TargetFunction, pole_points: &[C64], n: usize, contour: Contour) -> Result<f64, String> {
    let set = InterpolationSet::at_infinity_only(n);
    let pi = build_pade_doubled(target, &set).map_err(|e| e.to_string())?;
    let seg = *target.segment();
    let mut worst = 0.0f64;
    for j in 0..contour.points {
        let z = C64::from_polar(contour.radius, std::f64::consts::TAU * j as f64 / contour.points as f64);
        let r = blaschke_product_points(&seg, pole_points, z).map_err(|e| e.to_string())?;
        let rn = blaschke_product_rn(&seg, &set, z).map_err(|e| e.to_string())?;
        let v = pi.error(target, z).map_err(|e| e.to_string())? * seg.w(z).map_err(|e| e.to_string())? * r * r / (rn * rn);
        worst = worst.max((v - 2.0).norm());
    }
    Ok(worst)
}

/// Strictly decreasing until the floor is reached.
fn decreasing_to_floor(v: &[f64], floor: f64) -> bool {
    v.windows(2).all(|w| w[1] < w[0] || w[1] < floor)
}

// 6. Strong asymptotics for the constant density with nodes at infinity.
fn strong_asymptotics() -> Outcome {
    let start = Instant::now();
    let degrees: Vec<usize> = (1..=10).collect();
    let scheme = InterpolationScheme::new(degrees.iter().map(|&n| InterpolationSet::at_infinity_only(n)).collect(), Provenance::User)
        .unwrap();
    let mut notes = Vec::new();
    let cases = [
        (markov(-0.5, 0.5), vec![], Contour::default()),
        (
            TargetFunction::new(
                MeasureM::constant(-0.5, 0.5, c(1.0, 0.0)).unwrap(),
                RationalPart::new(vec![Pole::simple(c(2.0, 0.0), c(1.0, 0.0))]).unwrap(),
            )
            .unwrap(),
            vec![c(2.0, 0.0)],
            Contour { radius: 1.5, points: 512 },
        ),
    ];
    for (target, pole_points, contour) in cases {
        let dev: Vec<f64> =
            degrees.iter().map(|&n| literal_deviation(&target, &pole_points, n, contour)).collect::<Result<_, _>>()?;
        ensure(decreasing_to_floor(&dev, 1e-8), || format!("|z| = {}: not decreasing: {dev:?}", contour.radius))?;
        ensure(dev[9] < 0.1, || format!("|z| = {}: deviation {:.3e} at n = 10", contour.radius, dev[9]))?;
        // The report divides by the Szegő prediction, which is 2 here.
        let rep = verify_strong_asymptotics(&target, Source::Scheme(&scheme), &degrees, contour).map_err(|e| e.to_string())?;
        for (row, d) in rep.rows.iter().zip(&dev) {
            let gap = (2.0 * row.ratio_deviation - d).abs();
            ensure(gap < 1e-9, || format!("n = {}: report {} against direct {d}", row.n, 2.0 * row.ratio_deviation))?;
        }
        notes.push(format!("|z|={}: {:.1e} → {:.1e}", contour.radius, dev[0], dev[9]));
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{}, {:.1?}", notes.join("; "), start.elapsed()))
}

// 7. One critical point per degree in the uniqueness regime.
fn desk_uniqueness(runs: &Runs) -> Outcome {
    let elapsed = runs.theorem_a_time;
    for r in &runs.theorem_a {
        let n = r.degree;
        ensure(r.records.len() == 1, || format!("n = {n}: {} distinct critical points", r.records.len()))?;
        let rec = &r.records[0];
        ensure(rec.morse_index == Some(0), || format!("n = {n}: Morse index {:?}", rec.morse_index))?;
        ensure(rec.poles.iter().all(|p| p.im.abs() < 1e-10 && p.re > -0.4 && p.re < 0.4), || {
            format!("n = {n}: poles {:?}", rec.poles)
        })?;
    }
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:.1?}"))?;
    Ok(format!("degrees 2..6, 20 starts each, one minimum per degree, {elapsed:.1?}"))
}

// 8. Winding of 𝔉 − Π for degree n − 1 exterior interpolants.
fn winding_contract(runs: &mut Runs) -> Outcome {
    let target = markov(-0.5, 0.5);
    let nu = SignedMeasureSamples::arcsine(-0.5, 0.5, 2.0, 400).unwrap();
    let mut windings = Vec::new();
    for r in runs.markov.iter().filter(|r| r.degree >= 2) {
        let n = r.degree;
        let want = 1 - 2 * n as i64;
        let rec = best(r).ok_or_else(|| format!("n = {n}: no irreducible critical point"))?;
        let (_, pi) = comparison_for_record(&target, &nu, rec).map_err(|e| e.to_string())?;
        let report = check_comparison_criterion(&target, rec, &pi, 4096).map_err(|e| e.to_string())?;
        ensure(report.winding == want, || format!("n = {n}: comparison winding {}", report.winding))?;
        // The same count for interpolation at infinity only.
        let inf = build_pade_doubled(&target, &InterpolationSet::at_infinity_only(n - 1)).map_err(|e| e.to_string())?;
        let (w, _) = winding_adaptive(|z| inf.error(&target, z).unwrap(), 4096, 1 << 15).map_err(|e| e.to_string())?;
        ensure(w == want, || format!("n = {n}: winding {w} at infinity"))?;
        windings.push(report.winding);
        runs.markov_criterion.push((rec.clone(), report));
    }
    Ok(format!("n = 2..8: {windings:?}"))
}

// 9. A passing criterion implies σ_{n−1} > 2, and the dVP bound sits below σ_{n−1}.
fn criterion_hankel(runs: &Runs) -> Outcome {
    let nu = SignedMeasureSamples::arcsine(-0.5, 0.5, 2.0, 400).unwrap();
    let mut cases: Vec<(TargetFunction, CriticalPointRecord, Option<CriterionReport>)> =
        runs.markov_criterion.iter().map(|(r, c)| (markov(-0.5, 0.5), r.clone(), Some(c.clone()))).collect();
    for r in &runs.complex {
        if let Some(rec) = best(r) {
            cases.push((complex_density(), rec.clone(), None));
        }
    }
    let (mut passed, mut min_sigma, mut worst_excess) = (0, f64::INFINITY, f64::NEG_INFINITY);
    for (target, rec, report) in cases {
        let n = rec.degree;
        let (_, pi) = comparison_for_record(&target, &nu, &rec).map_err(|e| e.to_string())?;
        let report = match report {
            Some(r) => r,
            None => check_comparison_criterion(&target, &rec, &pi, 4096).map_err(|e| e.to_string())?,
        };
        let symbol = hankel_symbol(&target, &rec).map_err(|e| e.to_string())?;
        let sigma = hankel_sigma(&symbol.negative_coeffs, n, None).map_err(|e| e.to_string())?.sigma_n_minus_1();
        let dvp = dvp_lower_bound(&symbol.symbol, &symbol.comparison_samples(&pi), n).map_err(|e| e.to_string())?;
        if let Some(bound) = dvp.value() {
            ensure(bound <= sigma + 1e-6, || format!("n = {n}: bound {bound} above σ = {sigma}"))?;
            worst_excess = worst_excess.max(bound - sigma);
        }
        if report.passed {
            passed += 1;
            ensure(sigma > 2.0 - 1e-4, || format!("n = {n}: criterion passed with σ = {sigma}"))?;
            min_sigma = min_sigma.min(sigma);
        }
    }
    ensure(passed > 0, || "no case passed the criterion".into())?;
    Ok(format!("{passed} passing cases, min σ_(n−1) {min_sigma:.3}, max bound − σ {worst_excess:.2e}"))
}

// 10. Complex density: convergence, pole bounds and multiplicities.
fn complex_suite(runs: &Runs) -> Outcome {
    let mut multiple = Vec::new();
    let mut counts = Vec::new();
    for r in &runs.complex {
        let rate = r.converged() as f64 / r.assignment.len() as f64;
        ensure(rate >= 0.9, || format!("n = {}: {:.0}% of starts converged", r.degree, 100.0 * rate))?;
        counts.push(format!("{}:{}", r.degree, r.records.len()));
        if r.records.len() > 1 {
            multiple.push(r.degree);
        }
    }
    let best: Vec<CriticalPointRecord> = runs.complex.iter().filter_map(|r| best(r).cloned()).collect();
    let green = green_equilibrium(-0.5, 0.5, 400).map_err(|e| e.to_string())?;
    let diag = pole_diagnostics(&best, &green).map_err(|e| e.to_string())?;
    let sums: Vec<f64> = diag.rows.iter().map(|r| r.sum_abs_im).collect();
    ensure(diag.sum_abs_im_bound <= 2.0 * sums[0], || format!("Σ|Im| grows: {sums:?}"))?;
    ensure(sums[1..].windows(2).all(|w| w[1] <= w[0] * 1.01), || format!("Σ|Im| not settling: {sums:?}"))?;
    Ok(format!(
        "counts {{{}}}, multiplicity > 1 at {multiple:?}, Σ|Im| ≤ {:.4}, KS decreasing {:?}",
        counts.join(", "),
        diag.sum_abs_im_bound,
        diag.ks_decreasing
    ))
}

// 11. Index sum over nondegenerate interior critical points.
fn index_audit(runs: &Runs) -> Outcome {
    let tol = Tolerances::default();
    let mut retried = Vec::new();
    let groups = [
        (markov(-0.5, 0.5), &runs.markov),
        (complex_density(), &runs.complex),
        (markov(-0.4, 0.4), &runs.theorem_a),
    ];
    for (target, results) in groups {
        let f = Functional::new(target).unwrap();
        for r in results.iter().filter(|r| r.audit.warning.is_some()) {
            let again = multistart(&f, r.degree, 100, 99, &tol);
            if let Some(w) = again.audit.warning {
                return Err(format!("n = {}: {w}", r.degree));
            }
            retried.push(r.degree);
        }
    }
    Ok(format!("no persistent warnings; degrees retried with 100 starts: {retried:?}"))
}

fn main() {
    let mut failures = 0;
    let mut report = |k: usize, outcome: std::thread::Result<Outcome>| {
        let outcome = outcome.unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {k}: {msg}"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {k}: {msg}")
            }
        }
    };
    report(1, catch_unwind(hardy_core));
    report(2, catch_unwind(derivatives));
    report(3, catch_unwind(single_pole_hessian));
    report(4, catch_unwind(pade_exactness));
    let mut runs = Runs::new();
    report(5, catch_unwind(AssertUnwindSafe(|| error_identity(&runs))));
    report(6, catch_unwind(strong_asymptotics));
    report(7, catch_unwind(AssertUnwindSafe(|| desk_uniqueness(&runs))));
    report(8, catch_unwind(AssertUnwindSafe(|| winding_contract(&mut runs))));
    report(9, catch_unwind(AssertUnwindSafe(|| criterion_hankel(&runs))));
    report(10, catch_unwind(AssertUnwindSafe(|| complex_suite(&runs))));
    report(11, catch_unwind(AssertUnwindSafe(|| index_audit(&runs))));
    if failures > 0 {
        std::process::exit(1);
    }
}
