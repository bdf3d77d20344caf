//! Run records and the four commands.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::certify::{
    check_comparison_criterion, comparison_for_record, csv_string, dvp_lower_bound, fmt_f64, green_equilibrium,
    hankel_sigma, hankel_symbol, pole_diagnostics, verify_strong_asymptotics, AsymptoticsReport, CriterionReport,
    DvpBound, PoleDiagnostics, SignedMeasureSamples, Source,
};
use crate::config::{GREEN_GRID, WINDING_GRID};
use crate::critical::{multistart, CriticalPointRecord, Functional, IndexAudit, StartFailure};
use crate::error::{Error, Result};

/// Grid of the arcsine samples used for the default `ν̌ = 2ω`.
const DEFAULT_NU_GRID: usize = 400;

/// Critical points found at one degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeRun {
    pub degree: usize,
    pub starts: usize,
    pub converged: usize,
    /// Distinct critical points in order of first discovery.
    pub records: Vec<CriticalPointRecord>,
    /// Index into `records` for each start, `null` for failed starts.
    pub assignment: Vec<Option<usize>>,
    pub failures: Vec<StartFailure>,
    /// Lower-degree critical points reached from reducible records.
    pub reduced: Vec<CriticalPointRecord>,
    pub audit: IndexAudit,
}

impl DegreeRun {
    /// Lowest value among the irreducible interior records, or among all
    /// records if there is none.
    pub fn best(&self) -> Option<&CriticalPointRecord> {
        let by_value = |a: &&CriticalPointRecord, b: &&CriticalPointRecord| a.value.total_cmp(&b.value);
        self.records
            .iter()
            .filter(|r| r.irreducible && !r.has_flag("boundary-suspect"))
            .min_by(by_value)
            .or_else(|| self.records.iter().min_by(by_value))
    }
}

/// Output of `solve`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool_version: String,
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub wall_time_s: f64,
    /// Increasing in degree.
    pub degrees: Vec<DegreeRun>,
}

impl RunRecord {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("run {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("run {}: {e}", path.display())))
    }

    pub fn failed_starts(&self) -> usize {
        self.degrees.iter().map(|d| d.failures.len()).sum()
    }

    /// Best record of every degree that has one.
    pub fn best_records(&self) -> Vec<CriticalPointRecord> {
        self.degrees.iter().filter_map(|d| d.best().cloned()).collect()
    }
}

/// Writes `contents` to a temporary file next to `path` and renames it.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(format!("json: {e}")))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Where `solve` writes the run of a configuration.
pub fn run_path(cfg: &ExperimentConfig) -> PathBuf {
    cfg.outputs.join("runs").join(format!("{}.json", cfg.hash()))
}

/// Directory of the reports derived from a run.
pub fn report_dir(cfg: &ExperimentConfig) -> PathBuf {
    cfg.outputs.join(cfg.hash())
}

/// Runs the multistart search at every degree. The record is written even
/// when some starts fail.
pub fn solve(cfg: &ExperimentConfig) -> Result<(RunRecord, PathBuf)> {
    let target = cfg.validate()?;
    let f = Functional::new(target)?;
    let clock = Instant::now();
    let degrees = cfg
        .degrees
        .expand()
        .into_iter()
        .map(|n| {
            let res = multistart(&f, n, cfg.starts, cfg.seed, &cfg.tolerances);
            DegreeRun {
                degree: n,
                starts: cfg.starts,
                converged: res.converged(),
                records: res.records,
                assignment: res.assignment,
                failures: res.failures,
                reduced: res.reduced,
                audit: res.audit,
            }
        })
        .collect();
    let run = RunRecord {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: cfg.hash(),
        config: cfg.clone(),
        wall_time_s: clock.elapsed().as_secs_f64(),
        degrees,
    };
    let path = run_path(cfg);
    write_json(&path, &run)?;
    Ok((run, path))
}

fn check_run(cfg: &ExperimentConfig, run: &RunRecord) -> Result<()> {
    if run.config_hash != cfg.hash() {
        return Err(Error::Invalid(format!(
            "run was produced by config {}, not by this config ({})",
            run.config_hash,
            cfg.hash()
        )));
    }
    Ok(())
}

/// Reports of `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub asymptotics: AsymptoticsReport,
    pub poles: PoleDiagnostics,
}

/// Strong asymptotics and pole statistics of the best record per degree;
/// writes `asymptotics.csv`, `poles.csv` and `verify.json`.
pub fn verify(cfg: &ExperimentConfig, run: &RunRecord) -> Result<(VerifyReport, PathBuf)> {
    check_run(cfg, run)?;
    let target = cfg.validate()?;
    let best = run.best_records();
    if best.len() < 2 {
        return Err(Error::Invalid(format!("need ≥ 2 degrees with a critical point, the run has {}", best.len())));
    }
    let degrees: Vec<usize> = best.iter().map(|r| r.degree).collect();
    let asymptotics = verify_strong_asymptotics(&target, Source::Critical(&best), &degrees, cfg.contour())?;
    let seg = target.segment();
    let green = green_equilibrium(seg.a, seg.b, GREEN_GRID)?;
    let poles = pole_diagnostics(&best, &green)?;
    let dir = report_dir(cfg);
    write_atomic(&dir.join("asymptotics.csv"), asymptotics.to_csv()?.as_bytes())?;
    write_atomic(&dir.join("poles.csv"), poles.to_csv()?.as_bytes())?;
    let report = VerifyReport { asymptotics, poles };
    write_json(&dir.join("verify.json"), &report)?;
    Ok((report, dir))
}

/// Criterion outcome at one degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CriterionRow {
    Checked {
        report: CriterionReport,
        /// `σ_{n−1}` of the Hankel operator with symbol `s_q`.
        sigma_n_minus_1: Option<f64>,
        dvp: Option<DvpBound>,
    },
    Skipped {
        n: usize,
        reason: String,
    },
}

impl CriterionRow {
    fn csv_row(&self) -> Vec<String> {
        match self {
            CriterionRow::Checked { report, .. } => report.csv_row(),
            CriterionRow::Skipped { n, .. } => vec![n.to_string(), String::new(), String::new(), "skipped".into()],
        }
    }
}

/// Comparison criterion for the best record of each degree; writes
/// `criterion.csv` and `criterion.json`, and returns the path of the CSV.
/// With `self_check` the record itself stands in for `Π`, which must give
/// a zero ratio; the files are then named `criterion_self_check`.
pub fn criterion(
    cfg: &ExperimentConfig,
    run: &RunRecord,
    nu: Option<&SignedMeasureSamples>,
    self_check: bool,
) -> Result<(Vec<CriterionRow>, PathBuf)> {
    check_run(cfg, run)?;
    let target = cfg.validate()?;
    let seg = target.segment();
    let default_nu;
    let nu = match nu {
        Some(nu) => nu,
        None => {
            default_nu = SignedMeasureSamples::arcsine(seg.a, seg.b, 2.0, DEFAULT_NU_GRID)?;
            &default_nu
        }
    };
    let mut rows = Vec::new();
    for d in &run.degrees {
        let Some(rec) = d.best() else {
            rows.push(CriterionRow::Skipped { n: d.degree, reason: "no converged start".into() });
            continue;
        };
        if !rec.irreducible {
            rows.push(CriterionRow::Skipped { n: d.degree, reason: "the critical point is reducible".into() });
            continue;
        }
        let checked = if self_check {
            check_comparison_criterion(&target, rec, rec, WINDING_GRID)
                .map(|report| CriterionRow::Checked { report, sigma_n_minus_1: None, dvp: None })
        } else {
            checked_row(&target, nu, rec)
        };
        match checked {
            Ok(row) => rows.push(row),
            Err(e @ (Error::Inapplicable(_) | Error::Precondition(_))) => {
                rows.push(CriterionRow::Skipped { n: d.degree, reason: e.to_string() })
            }
            Err(e) => return Err(e),
        }
    }
    let stem = if self_check { "criterion_self_check" } else { "criterion" };
    let csv = csv_string(&CriterionReport::CSV_HEADER, rows.iter().map(CriterionRow::csv_row))?;
    let path = report_dir(cfg).join(format!("{stem}.csv"));
    write_atomic(&path, csv.as_bytes())?;
    write_json(&path.with_extension("json"), &rows)?;
    Ok((rows, path))
}

fn checked_row(
    target: &crate::cauchy::TargetFunction,
    nu: &SignedMeasureSamples,
    rec: &CriticalPointRecord,
) -> Result<CriterionRow> {
    let (_, pi) = comparison_for_record(target, nu, rec)?;
    let report = check_comparison_criterion(target, rec, &pi, WINDING_GRID)?;
    let symbol = hankel_symbol(target, rec)?;
    let sigma = hankel_sigma(&symbol.negative_coeffs, rec.degree, None)?;
    let dvp = dvp_lower_bound(&symbol.symbol, &symbol.comparison_samples(&pi), rec.degree)?;
    Ok(CriterionRow::Checked { report, sigma_n_minus_1: Some(sigma.sigma_n_minus_1()), dvp: Some(dvp) })
}

/// Writes `critical_points.csv` and `poles.csv` for plotting.
pub fn report(run: &RunRecord, out: &Path) -> Result<Vec<PathBuf>> {
    let points = csv_string(
        &["n", "index", "value", "grad_norm", "morse_index", "irreducible", "hits", "flags"],
        run.degrees.iter().flat_map(|d| {
            d.records.iter().enumerate().map(move |(i, r)| {
                let hits = d.assignment.iter().filter(|a| **a == Some(i)).count();
                vec![
                    d.degree.to_string(),
                    i.to_string(),
                    fmt_f64(r.value),
                    fmt_f64(r.grad_norm),
                    r.morse_index.map(|m| m.to_string()).unwrap_or_default(),
                    r.irreducible.to_string(),
                    hits.to_string(),
                    r.flags.join(";"),
                ]
            })
        }),
    )?;
    let poles = csv_string(
        &["n", "index", "re", "im"],
        run.degrees.iter().flat_map(|d| {
            d.records.iter().enumerate().flat_map(move |(i, r)| {
                r.poles
                    .iter()
                    .map(move |p| vec![d.degree.to_string(), i.to_string(), fmt_f64(p.re), fmt_f64(p.im)])
            })
        }),
    )?;
    let paths = vec![out.join("critical_points.csv"), out.join("poles.csv")];
    write_atomic(&paths[0], points.as_bytes())?;
    write_atomic(&paths[1], poles.as_bytes())?;
    Ok(paths)
}
